// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when a
// binding criterion fails; throughput is reported but never gates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>

#include "cli.hpp"
#include "roomgen/augment.hpp"
#include "roomgen/container.hpp"
#include "roomgen/generate.hpp"
#include "roomgen/ocl.hpp"
#include "roomgen/rng.hpp"
#include "roomgen/scene.hpp"
#include "support.hpp"

namespace {

using namespace roomgen;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- loss oracle, written term by term in long double ----

using Row = std::vector<long double>;

std::vector<Row> rows_of(const FeatureMatrix& m) {
  std::vector<Row> out(static_cast<std::size_t>(m.rows()), Row(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) out[i][k] = m(i, k);
  return out;
}

long double sim(const Row& a, const Row& b) {
  long double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double oracle_loss(const FeatureMatrix& fa, const FeatureMatrix& fb, const FeatureMatrix& extras,
                   double tau, bool exclude_self) {
  const auto a = rows_of(fa), b = rows_of(fb), e = rows_of(extras);
  const std::size_t n = a.size();
  std::vector<const Row*> pool;
  for (const auto& r : a) pool.push_back(&r);
  for (const auto& r : b) pool.push_back(&r);
  for (const auto& r : e) pool.push_back(&r);
  long double total = 0;
  for (std::size_t side = 0; side < 2; ++side) {
    long double side_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t anchor = side * n + i;
      const std::size_t positive = (1 - side) * n + i;
      long double denom = 0;
      for (std::size_t k = 0; k < pool.size(); ++k) {
        if (exclude_self && k == anchor) continue;
        denom += std::exp(sim(*pool[anchor], *pool[k]) / tau);
      }
      side_sum += -std::log(std::exp(sim(*pool[anchor], *pool[positive]) / tau) / denom);
    }
    total += side_sum / static_cast<long double>(n);
  }
  return static_cast<double>(total);
}

FeatureMatrix random_unit_rows(Rng& rng, Eigen::Index n, Eigen::Index d) {
  FeatureMatrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) m(i, k) = rng.normal(0, 1);
    m.row(i).normalize();
  }
  return m;
}

// ---- criteria ----

Outcome layout_invariants() {
  const auto t0 = Clock::now();
  const SceneConfig cfg;
  const auto& cat = testing::catalog();
  std::size_t placements = 0, forced = 0, gravity = 0, predicate = 0, overlap = 0;
  std::size_t count_bad = 0, area_bad = 0;
  double ratio_min = 1e9, ratio_max = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng selection(seed);
    std::vector<PointCloud> objs;
    for (std::size_t i : sample_object_set(cat.size(), selection, cfg)) objs.push_back(cat[i]);
    const RoomScene room = generate_room(objs, seed, cfg);
    const RoomRecord& rec = room.record;
    const auto audit = testing::audit_layout(rec.placements);
    gravity += audit.gravity_violations;
    predicate += audit.predicate_violations;
    overlap += audit.overlap_violations;
    placements += rec.placements.size();
    forced += static_cast<std::size_t>(
        std::count_if(rec.placements.begin(), rec.placements.end(), [](const Placement& p) { return p.forced; }));
    if (rec.object_count < 12 || rec.object_count > 18 || rec.placements.size() != rec.object_count)
      ++count_bad;

    double sum = 0;  // footprint areas recomputed from placements
    for (const Placement& p : rec.placements) sum += p.footprint.x * p.footprint.y;
    const double overall_m2 = room.dims.overall_area_cm2 / 1e4;
    const double realized = room.dims.area_m2();
    const double eps = 1e-9 * sum;
    const bool overall_ok = overall_m2 >= 1.2 * sum - eps && overall_m2 <= 2.0 * sum + eps;
    const bool realized_ok = realized >= 1.2 * sum - room.dims.a_m() * 0.01 - eps &&
                             realized <= 2.0 * sum + eps;
    if (!overall_ok || !realized_ok) ++area_bad;
    ratio_min = std::min(ratio_min, realized / sum);
    ratio_max = std::max(ratio_max, realized / sum);
  }
  const double secs = seconds_since(t0);
  const double rate = static_cast<double>(forced) / static_cast<double>(placements);
  Outcome o;
  o.pass = gravity == 0 && predicate == 0 && overlap == 0 && count_bad == 0 && area_bad == 0 &&
           rate < 0.05 && secs < 60.0;
  o.detail = "1000 rooms, gravity_violations=" + std::to_string(gravity) +
             " predicate_violations=" + std::to_string(predicate) +
             " overlap_violations=" + std::to_string(overlap) +
             " count_violations=" + std::to_string(count_bad) +
             " area_violations=" + std::to_string(area_bad) + " area_ratio=[" + fmt(ratio_min) +
             ", " + fmt(ratio_max) + "] forced_rate=" + fmt(rate) + " seconds=" + fmt(secs);
  return o;
}

Outcome size_band() {
  const ObjectAugmentConfig cfg;
  const auto& cat = testing::catalog();
  double lo = 1e9, hi = 0;
  std::size_t bad = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng rng(split_seed(2024, i));
    const double e = compute_aabb(augment_object(cat[i % cat.size()], rng, cfg)).max_extent();
    if (!(e >= 0.5 && e <= 2.0)) ++bad;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  return {bad == 0, "10000 objects, out_of_band=" + std::to_string(bad) + " max_extent_range=[" +
                        fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome beta_ks() {
  Rng rng(77);
  const std::size_t n = 100000;
  std::vector<double> x(n);
  for (double& v : x) v = sample_beta_half(rng);
  std::sort(x.begin(), x.end());
  double d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = 2.0 / std::numbers::pi * std::asin(std::sqrt(x[i]));
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d < 0.01, "n=100000 ks_distance=" + fmt(d)};
}

Outcome loss_oracle() {
  double worst = 0;
  for (std::uint64_t c = 0; c < 50; ++c) {
    Rng rng(1000 + c);
    const auto n = rng.uniform_int(2, 4);
    const auto d = rng.uniform_int(2, 8);
    const auto extras = rng.uniform_int(0, 3);
    const double tau = rng.uniform(0.05, 1.5);
    const bool excl = c % 2 == 0;
    const FeatureMatrix a = random_unit_rows(rng, n, d), b = random_unit_rows(rng, n, d);
    const FeatureMatrix e = random_unit_rows(rng, extras, d);
    worst = std::max(worst, std::abs(ocl_loss(a, b, e, {tau, excl}) - oracle_loss(a, b, e, tau, excl)));
  }
  const FeatureMatrix id = FeatureMatrix::Identity(2, 2);
  const double hand = 2.0 * std::log((std::numbers::e + 2.0) / std::numbers::e);
  const double got = ocl_loss(id, id, FeatureMatrix(0, 2), {1.0, true});
  const double hand_err = std::abs(got - hand);
  return {worst < 1e-12 && hand_err < 1e-9,
          "50 configs max_abs_diff=" + fmt(worst) + " hand_case=" + fmt(got) + " expected=" +
              fmt(hand) + " hand_abs_diff=" + fmt(hand_err)};
}

double relative_error(const FeatureMatrix& g, const FeatureMatrix& fd) {
  const double denom = std::max(g.norm(), fd.norm());
  return denom > 0 ? (g - fd).norm() / denom : 0.0;
}

Outcome gradient_oracle() {
  const double taus[] = {0.07, 0.1, 0.5, 1.0};
  const double h = 1e-4;
  double worst = 0;
  for (std::uint64_t c = 0; c < 20; ++c) {
    Rng rng(5000 + c);
    const double tau = taus[c % 4];
    const bool excl = c % 3 != 2;
    const auto n = rng.uniform_int(2, 4);
    const auto d = rng.uniform_int(2, 8);
    FeatureMatrix a = random_unit_rows(rng, n, d), b = random_unit_rows(rng, n, d);
    FeatureMatrix e = random_unit_rows(rng, c % 3, d);
    const OclGradient g = ocl_grad(a, b, e, {tau, excl});
    // stack every differentiated entry into one vector per config
    const Eigen::Index total = a.size() + b.size() + e.size();
    FeatureMatrix analytic(1, total), numeric(1, total);
    Eigen::Index k = 0;
    for (auto [m, gm] : {std::pair{&a, &g.grad_a}, std::pair{&b, &g.grad_b}, std::pair{&e, &g.grad_extras}}) {
      for (Eigen::Index i = 0; i < m->rows(); ++i) {
        for (Eigen::Index j = 0; j < m->cols(); ++j, ++k) {
          const double saved = (*m)(i, j);
          (*m)(i, j) = saved + h;
          const double up = oracle_loss(a, b, e, tau, excl);
          (*m)(i, j) = saved - h;
          const double down = oracle_loss(a, b, e, tau, excl);
          (*m)(i, j) = saved;
          numeric(0, k) = (up - down) / (2 * h);
          analytic(0, k) = (*gm)(i, j);
        }
      }
    }
    worst = std::max(worst, relative_error(analytic, numeric));
  }
  return {worst < 1e-4, "20 configs tau in {0.07,0.1,0.5,1.0} max_rel_err=" + fmt(worst)};
}

Outcome symmetry_permutation() {
  std::size_t asym = 0;
  double perm_dev = 0;
  for (std::uint64_t c = 0; c < 50; ++c) {
    Rng rng(9000 + c);
    const auto n = rng.uniform_int(2, 12);
    const auto d = rng.uniform_int(2, 32);
    const OclConfig cfg{rng.uniform(0.05, 1.0), c % 2 == 0};
    const FeatureMatrix a = random_unit_rows(rng, n, d), b = random_unit_rows(rng, n, d);
    const FeatureMatrix e = random_unit_rows(rng, rng.uniform_int(0, 6), d);
    const double l = ocl_loss(a, b, e, cfg);
    if (l != ocl_loss(b, a, e, cfg)) ++asym;
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    FeatureMatrix pa(n, d), pb(n, d), pe = e;
    for (Eigen::Index i = 0; i < n; ++i) {
      pa.row(i) = a.row(perm[i]);
      pb.row(i) = b.row(perm[i]);
    }
    if (pe.rows() > 1) pe.row(0).swap(pe.row(pe.rows() - 1));
    perm_dev = std::max(perm_dev, std::abs(l - ocl_loss(pa, pb, pe, cfg)));
  }
  return {asym == 0 && perm_dev < 1e-12, "50 configs swap_mismatches=" + std::to_string(asym) +
                                             " max_permutation_dev=" + fmt(perm_dev)};
}

Outcome pair_consistency() {
  const SceneConfig cfg;
  const auto pairs = generate_pairs(testing::catalog(), 0, 100, cfg);
  std::size_t full = 0, below_min = 0;
  for (const ScenePair& p : pairs) {
    const auto ca = label_counts(p.room_a.labels), cb = label_counts(p.room_b.labels);
    std::vector<std::uint32_t> all(p.room_a.record.object_count);
    std::iota(all.begin(), all.end(), 1u);
    if (p.shared_ids == all) ++full;
    for (std::uint32_t id : p.shared_ids) {
      const auto ia = ca.find(id), ib = cb.find(id);
      if (id == 0 || ia == ca.end() || ib == cb.end() || ia->second < cfg.min_points ||
          ib->second < cfg.min_points)
        ++below_min;
    }
  }
  return {full >= 95 && below_min == 0, "100 pairs full_coverage=" + std::to_string(full) +
                                            " shared_ids_below_min_points=" + std::to_string(below_min)};
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  if (code != 0) std::cerr << e.str();
  return code;
}

struct Workspace {
  testing::TempDir dir{"acceptance"};
  std::string catalog = (dir / "catalog").string();
  bool ok = cli({"make-catalog", "--out", catalog, "--count", "90", "--seed", "42"}) == 0;
};

Outcome determinism_serialization(Workspace& ws) {
  const auto a = (ws.dir / "a.bin").string(), b = (ws.dir / "b.bin").string();
  const int ca = cli({"gen-pairs", "--catalog", ws.catalog, "--out", a, "--pairs", "2", "--seed", "7"});
  const int cb = cli({"gen-pairs", "--catalog", ws.catalog, "--out", b, "--pairs", "2", "--seed", "7", "--threads", "1"});
  const auto bytes_a = testing::read_bytes(a), bytes_b = testing::read_bytes(b);
  const bool identical = ca == 0 && cb == 0 && !bytes_a.empty() && bytes_a == bytes_b;

  // round trip of an in-memory container at 32-bit precision
  SceneConfig cfg;
  SceneContainer c;
  c.point_budget = static_cast<std::uint32_t>(cfg.point_budget);
  c.base_seed = 7;
  c.pairs = generate_pairs(testing::catalog(), 7, 2, cfg);
  c.metadata = "k = v\n";
  const auto path = ws.dir / "rt.bin";
  write_scene_container(c, path);
  const SceneContainer back = read_scene_container(path);
  std::size_t mismatches = 0;
  auto f32 = [](double v) { return static_cast<double>(static_cast<float>(v)); };
  for (std::size_t k = 0; k < c.pairs.size(); ++k) {
    const ScenePair &p = c.pairs[k], &q = back.pairs[k];
    mismatches += p.pair_index != q.pair_index || p.shared_ids != q.shared_ids;
    for (auto [x, y] : {std::pair{&p.room_a, &q.room_a}, std::pair{&p.room_b, &q.room_b}}) {
      mismatches += x->labels != y->labels || x->seed != y->seed ||
                    x->dims.a_cells != y->dims.a_cells || x->dims.b_cells != y->dims.b_cells;
      for (std::size_t i = 0; i < x->points.size(); ++i) {
        const Vec3 &u = x->points[i], &v = y->points[i];
        mismatches += f32(u.x) != v.x || f32(u.y) != v.y || f32(u.z) != v.z;
      }
    }
  }
  mismatches += back.metadata != c.metadata || back.base_seed != c.base_seed;
  const bool reencode = encode_scene_container(back) == testing::read_bytes(path);
  return {identical && mismatches == 0 && reencode,
          std::string("gen-pairs byte_identical=") + (identical ? "yes" : "no") +
              " (" + std::to_string(bytes_a.size()) + " bytes) round_trip_mismatches=" +
              std::to_string(mismatches) + " reencode_identical=" + (reencode ? "yes" : "no")};
}

Outcome ablation_toggles(Workspace& ws) {
  const auto base = (ws.dir / "base.bin").string(), nosort = (ws.dir / "nosort.bin").string(),
             nowall = (ws.dir / "nowall.bin").string();
  const std::vector<std::string> common{"--catalog", ws.catalog, "--pairs", "2", "--seed", "11"};
  auto gen = [&](const std::string& out, const std::string& flag) {
    std::vector<std::string> args{"gen-pairs", "--out", out};
    args.insert(args.end(), common.begin(), common.end());
    if (!flag.empty()) args.push_back(flag);
    return cli(args);
  };
  bool ok = gen(base, "") == 0 && gen(nosort, "--no-gravity-sort") == 0 && gen(nowall, "--no-floor-wall") == 0;
  if (!ok) return {false, "gen-pairs failed"};
  const auto b = read_scene_container(base), s = read_scene_container(nosort), w = read_scene_container(nowall);

  bool base_has_confounders = true, nowall_clean = true;
  for (const auto& p : b.pairs)
    base_has_confounders &= label_counts(p.room_a.labels).contains(0) && label_counts(p.room_b.labels).contains(0);
  for (const auto& p : w.pairs)
    for (const auto* r : {&p.room_a, &p.room_b})
      nowall_clean &= !label_counts(r->labels).contains(0) && r->record.confounder_points == 0;
  const bool sort_changes = b.pairs[0].room_a.points != s.pairs[0].room_a.points &&
                            s.metadata.find("layout.sort_by_area = false") != std::string::npos;

  // placement order: input order with the toggle, descending area without
  SceneConfig sorted_cfg, unsorted_cfg;
  unsorted_cfg.layout.sort_by_area = false;
  sorted_cfg.point_budget = unsorted_cfg.point_budget = 2000;
  std::size_t order_bad = 0;
  for (std::uint32_t i = 0; i < 20; ++i) {
    const ScenePair u = generate_indexed_pair(testing::catalog(), 11, i, unsorted_cfg);
    const ScenePair g = generate_indexed_pair(testing::catalog(), 11, i, sorted_cfg);
    for (const auto& pl : u.room_a.record.placements) order_bad += pl.source_index != pl.object_index;
    const auto& gp = g.room_a.record.placements;
    for (std::size_t k = 1; k < gp.size(); ++k)
      order_bad += gp[k - 1].footprint.x * gp[k - 1].footprint.y < gp[k].footprint.x * gp[k].footprint.y;
  }
  const bool pass = base_has_confounders && nowall_clean && sort_changes && order_bad == 0;
  return {pass, std::string("no-gravity-sort output_changed=") + (sort_changes ? "yes" : "no") +
                    " placement_order_violations=" + std::to_string(order_bad) +
                    " no-floor-wall label0_absent=" + (nowall_clean ? "yes" : "no") +
                    " default_has_floor_wall=" + (base_has_confounders ? "yes" : "no")};
}

Outcome throughput(Workspace& ws) {
  std::string out;
  if (cli({"bench", "--catalog", ws.catalog, "--pairs", "40", "--seed", "1"}, &out) != 0)
    return {false, "bench failed"};
  auto value = [&](const std::string& key) {
    const auto at = out.find(key + "=");
    return at == std::string::npos ? 0.0 : std::stod(out.substr(at + key.size() + 1));
  };
  const double pps = value("pairs_per_second");
  return {pps >= 10.0, "non-binding: pairs_per_second=" + fmt(pps) + " points_per_second=" +
                           fmt(value("points_per_second")) + " threads=" + fmt(value("threads")) +
                           " (target >= 10 pairs/s at 40000 points per room)"};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    bool binding;
    std::function<Outcome()> run;
  };
  Workspace ws;
  if (!ws.ok) {
    std::cout << "FAIL setup: could not write the synthetic catalog\n";
    return 1;
  }
  const std::vector<Criterion> criteria{
      {"layout_invariants", true, layout_invariants},
      {"size_band", true, size_band},
      {"beta_sampler_ks", true, beta_ks},
      {"loss_oracle_equivalence", true, loss_oracle},
      {"gradient_oracle", true, gradient_oracle},
      {"loss_symmetry_permutation", true, symmetry_permutation},
      {"pair_consistency", true, pair_consistency},
      {"determinism_serialization", true, [&] { return determinism_serialization(ws); }},
      {"ablation_toggles", true, [&] { return ablation_toggles(ws); }},
      {"throughput", false, [&] { return throughput(ws); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
    if (!o.pass && c.binding) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
