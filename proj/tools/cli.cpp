#include "cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <thread>

#include "roomgen/config.hpp"
#include "roomgen/container.hpp"
#include "roomgen/error.hpp"
#include "roomgen/generate.hpp"
#include "roomgen/object_io.hpp"
#include "roomgen/ocl.hpp"
#include "roomgen/ocl_oracle.hpp"
#include "roomgen/ply_export.hpp"
#include "roomgen/stats.hpp"
#include "roomgen/synth.hpp"

namespace roomgen::cli {
namespace {

namespace fs = std::filesystem;

// Batch used by loss-check when the container holds more pairs.
constexpr std::size_t kBatchPairs = 16;

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct GenOptions {
  std::string catalog;
  std::string out;
  std::uint32_t pairs = 0;
  std::uint64_t seed = 0;
  std::string config;
  unsigned threads = 0;
  bool no_gravity_sort = false;
  bool no_floor_wall = false;
};

struct LossOptions {
  std::string in;
  std::optional<double> tau;
  bool include_self = false;
};

struct ExportOptions {
  std::string in;
  std::uint32_t pair = 0;
  std::string room;
  std::string out;
};

struct CatalogOptions {
  std::string out;
  std::size_t count = 90;
  std::uint64_t seed = 0;
  std::size_t points = 2048;
};

RunConfig effective_config(const GenOptions& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.no_gravity_sort) cfg.scene.layout.sort_by_area = false;
  if (o.no_floor_wall) cfg.scene.confounders.enabled = false;
  cfg.validate();
  return cfg;
}

// config keys from the container metadata, room records left out
RunConfig config_from_metadata(const std::string& metadata) {
  std::vector<KeyValue> keys;
  for (auto& kv : parse_key_values(metadata))
    if (!kv.key.starts_with("room.")) keys.push_back(std::move(kv));
  return apply_config(RunConfig{}, keys);
}

int cmd_gen_pairs(const GenOptions& o, std::ostream& out) {
  const RunConfig cfg = effective_config(o);
  const ObjectCatalog catalog = load_catalog(o.catalog, cfg.min_object_points);
  SceneContainer c;
  c.point_budget = static_cast<std::uint32_t>(cfg.scene.point_budget);
  c.base_seed = o.seed;
  c.pairs = generate_pairs(catalog.objects, o.seed, o.pairs, cfg.scene, o.threads);
  c.metadata = make_metadata(to_config_text(cfg), c.pairs);
  const std::size_t bytes = write_scene_container(c, o.out);
  out << "pairs=" << c.pairs.size() << "\n"
      << "catalog_objects=" << catalog.objects.size() << "\n"
      << "bytes=" << bytes << "\n"
      << "out=" << o.out << "\n";
  return kExitOk;
}

int cmd_stats(const std::string& in, std::ostream& out) {
  const SceneContainer c = read_scene_container(in);
  out << "base_seed=" << c.base_seed << "\n"
      << "point_budget=" << c.point_budget << "\n"
      << format_stats(scene_stats(c.pairs));
  return kExitOk;
}

FeatureMatrix stack_extras(const std::vector<PairEmbedding>& others) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& e : others) {
    rows += e.f_a.rows() + e.f_b.rows();
    cols = e.f_a.cols();
  }
  FeatureMatrix m(rows, cols);
  Eigen::Index r = 0;
  for (const auto& e : others) {
    m.middleRows(r, e.f_a.rows()) = e.f_a;
    r += e.f_a.rows();
    m.middleRows(r, e.f_b.rows()) = e.f_b;
    r += e.f_b.rows();
  }
  return m;
}

int cmd_loss_check(const LossOptions& o, std::ostream& out, std::ostream& err) {
  const SceneContainer c = read_scene_container(o.in);
  if (c.pairs.empty()) fail(ErrorKind::InvalidInput, o.in + ": container holds no pairs");
  RunConfig cfg = config_from_metadata(c.metadata);
  if (o.tau) cfg.loss.temperature = *o.tau;
  if (o.include_self) cfg.loss.exclude_self = false;
  cfg.loss.validate();

  const auto& ec = cfg.encoder;
  const ToyEncoder encoder = ToyEncoder::make_default(ec.encoder_seed, ec.encoder_width,
                                                      ec.encoder_depth);
  const ProjectionHead head =
      ProjectionHead::make_default(encoder.output_dim(), ec.head_seed, ec.head_output);

  const ScenePair& pair = c.pairs.front();
  const PairEmbedding emb = embed_pair(pair, encoder, head);
  const FeatureMatrix none(0, emb.f_a.cols());

  const double e2e = ocl_end_to_end(pair, encoder, head, cfg.loss);
  const double loss = ocl_loss(emb.f_a, emb.f_b, none, cfg.loss);
  const double brute = oracle::brute_force_ocl_loss(emb.f_a, emb.f_b, none, cfg.loss);
  const double swapped = ocl_loss(emb.f_b, emb.f_a, none, cfg.loss);
  const OclGradient analytic = ocl_grad(emb.f_a, emb.f_b, none, cfg.loss);
  const OclGradient numeric =
      oracle::finite_difference_grad(emb.f_a, emb.f_b, none, cfg.loss, kFiniteDifferenceStep);
  const double grad_err = oracle::gradient_relative_error(analytic, numeric);
  const Eigen::Index candidates = 2 * emb.f_a.rows() - (cfg.loss.exclude_self ? 1 : 0);
  const double bound = oracle::loss_lower_bound(candidates, cfg.loss.temperature);

  bool ok = true;
  auto check = [&](bool cond, const std::string& what) {
    if (!cond) {
      err << "oracle violation: " << what << "\n";
      ok = false;
    }
  };
  check(std::abs(loss - brute) <= kBruteForceTolerance, "brute-force loss mismatch");
  check(std::abs(loss - e2e) <= kBruteForceTolerance, "end-to-end loss mismatch");
  check(loss == swapped, "loss not symmetric under room swap");
  check(grad_err < kGradientTolerance, "gradient check");
  check(loss >= bound - kBruteForceTolerance, "loss below analytic lower bound");

  out << "pair_index=" << pair.pair_index << "\n"
      << "instances=" << emb.ids.size() << "\n"
      << "feature_dim=" << emb.f_a.cols() << "\n"
      << "tau=" << num(cfg.loss.temperature) << "\n"
      << "exclude_self=" << (cfg.loss.exclude_self ? "true" : "false") << "\n"
      << "loss=" << num(loss) << "\n"
      << "end_to_end_loss=" << num(e2e) << "\n"
      << "brute_force_loss=" << num(brute) << "\n"
      << "brute_force_abs_diff=" << num(std::abs(loss - brute)) << "\n"
      << "symmetry_abs_diff=" << num(std::abs(loss - swapped)) << "\n"
      << "grad_check_rel_err=" << num(grad_err) << "\n"
      << "lower_bound=" << num(bound) << "\n";

  if (c.pairs.size() > 1) {
    std::vector<PairEmbedding> others;
    const std::size_t n = std::min(c.pairs.size(), kBatchPairs);
    for (std::size_t i = 1; i < n; ++i) others.push_back(embed_pair(c.pairs[i], encoder, head));
    const FeatureMatrix extras = stack_extras(others);
    const double batch = ocl_loss(emb.f_a, emb.f_b, extras, cfg.loss);
    const double batch_brute = oracle::brute_force_ocl_loss(emb.f_a, emb.f_b, extras, cfg.loss);
    check(std::abs(batch - batch_brute) <= kBruteForceTolerance, "batch brute-force mismatch");
    out << "batch_pairs=" << n << "\n"
        << "batch_extras=" << extras.rows() << "\n"
        << "batch_loss=" << num(batch) << "\n"
        << "batch_brute_force_abs_diff=" << num(std::abs(batch - batch_brute)) << "\n";
  }
  out << "status=" << (ok ? "ok" : "fail") << "\n";
  return ok ? kExitOk : kExitFailure;
}

int cmd_export(const ExportOptions& o, std::ostream& out) {
  const SceneContainer c = read_scene_container(o.in);
  if (o.pair >= c.pairs.size())
    fail(ErrorKind::InvalidInput, o.in + ": pair " + std::to_string(o.pair) + " out of range (" +
                                      std::to_string(c.pairs.size()) + " pairs)");
  const ScenePair& p = c.pairs[o.pair];
  const RoomScene& room = (o.room == "A" || o.room == "a") ? p.room_a : p.room_b;
  export_ply(room, o.out);
  out << "points=" << room.points.size() << "\n"
      << "out=" << o.out << "\n";
  return kExitOk;
}

int cmd_bench(const GenOptions& o, std::ostream& out) {
  const RunConfig cfg = effective_config(o);
  const ObjectCatalog catalog = load_catalog(o.catalog, cfg.min_object_points);
  const auto t0 = std::chrono::steady_clock::now();
  const auto pairs = generate_pairs(catalog.objects, o.seed, o.pairs, cfg.scene, o.threads);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t points = 0;
  for (const auto& p : pairs) points += p.room_a.points.size() + p.room_b.points.size();
  const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  out << "pairs=" << pairs.size() << "\n"
      << "threads=" << threads << "\n"
      << "points_per_room=" << cfg.scene.point_budget << "\n"
      << "seconds=" << num(secs) << "\n"
      << "pairs_per_second=" << num(pairs.size() / secs) << "\n"
      << "points_per_second=" << num(points / secs) << "\n";
  return kExitOk;
}

int cmd_make_catalog(const CatalogOptions& o, std::ostream& out) {
  fs::create_directories(o.out);
  const auto objects = synth::make_catalog(o.count, o.seed, o.points);
  std::vector<CatalogEntry> entries;
  for (const auto& obj : objects) {
    const fs::path path = fs::path(o.out) / (obj.id + ".xyz");
    write_xyz(path, obj.cloud);
    entries.push_back({path, obj.id, obj.category});
  }
  write_manifest(o.out, entries);
  out << "objects=" << objects.size() << "\n"
      << "out=" << o.out << "\n";
  return kExitOk;
}

void add_generation_flags(CLI::App* sub, GenOptions& o) {
  sub->add_option("--catalog", o.catalog, "object catalog directory")->required();
  sub->add_option("--pairs", o.pairs, "number of scene pairs")->required()
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "base seed");
  sub->add_option("--config", o.config, "run configuration file")->check(CLI::ExistingFile);
  sub->add_option("--threads", o.threads, "worker threads, 0 = hardware concurrency");
  sub->add_flag("--no-gravity-sort", o.no_gravity_sort, "place objects in input order");
  sub->add_flag("--no-floor-wall", o.no_floor_wall, "omit floor and wall points");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"synthetic paired-room generator and contrastive loss checker", "roomgen"};
  app.require_subcommand(1);

  GenOptions gen, bench;
  auto* gen_cmd = app.add_subcommand("gen-pairs", "generate scene pairs into a container");
  add_generation_flags(gen_cmd, gen);
  gen_cmd->add_option("--out", gen.out, "output container")->required();

  std::string stats_in;
  auto* stats_cmd = app.add_subcommand("stats", "print scene statistics of a container");
  stats_cmd->add_option("--in", stats_in, "container file")->required()->check(CLI::ExistingFile);

  LossOptions loss;
  auto* loss_cmd = app.add_subcommand("loss-check", "run the contrastive loss and its oracles");
  loss_cmd->add_option("--in", loss.in, "container file")->required()->check(CLI::ExistingFile);
  loss_cmd->add_option("--tau", loss.tau, "temperature")->check(CLI::PositiveNumber);
  loss_cmd->add_flag("--include-self", loss.include_self, "keep the anchor among its candidates");

  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export", "export one room as colored PLY");
  export_cmd->add_option("--in", exp.in, "container file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--pair", exp.pair, "pair index")->required();
  export_cmd->add_option("--room", exp.room, "A or B")->required()
      ->check(CLI::IsMember({"A", "B", "a", "b"}));
  export_cmd->add_option("--out", exp.out, "output .ply")->required();

  auto* bench_cmd = app.add_subcommand("bench", "measure generation throughput");
  add_generation_flags(bench_cmd, bench);

  CatalogOptions cat;
  auto* cat_cmd = app.add_subcommand("make-catalog", "write a synthetic object catalog");
  cat_cmd->add_option("--out", cat.out, "output directory")->required();
  cat_cmd->add_option("--count", cat.count, "number of objects")->check(CLI::PositiveNumber);
  cat_cmd->add_option("--seed", cat.seed, "seed");
  cat_cmd->add_option("--points", cat.points, "points per object")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen_pairs(gen, out);
    if (*stats_cmd) return cmd_stats(stats_in, out);
    if (*loss_cmd) return cmd_loss_check(loss, out, err);
    if (*export_cmd) return cmd_export(exp, out);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*cat_cmd) return cmd_make_catalog(cat, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("roomgen");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace roomgen::cli
