#include "roomgen/ocl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "roomgen/error.hpp"
#include "roomgen/rng.hpp"

namespace roomgen {

void validate_features(const FeatureMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1)
    fail(ErrorKind::InvalidInput, std::string(what) + " must have at least one row and column");
  if (!m.allFinite()) fail(ErrorKind::InvalidInput, std::string(what) + " has non-finite values");
}

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) fail(ErrorKind::InvalidInput, "MLP needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    if (l.weight.rows() != l.bias.size())
      fail(ErrorKind::InvalidInput, "layer " + std::to_string(i) + " bias size mismatch");
    if (i > 0 && l.weight.cols() != layers_[i - 1].weight.rows())
      fail(ErrorKind::InvalidInput, "layer " + std::to_string(i) + " input width mismatch");
  }
}

Mlp Mlp::random(std::span<const Eigen::Index> widths, std::uint64_t seed) {
  if (widths.size() < 2) fail(ErrorKind::InvalidInput, "MLP needs input and output widths");
  Rng rng(seed);
  std::vector<DenseLayer> layers;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    const Eigen::Index in = widths[i];
    const Eigen::Index out = widths[i + 1];
    const double stddev = std::sqrt(2.0 / static_cast<double>(in));
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
    for (Eigen::Index r = 0; r < out; ++r)
      for (Eigen::Index c = 0; c < in; ++c) layer.weight(r, c) = rng.normal(0.0, stddev);
    for (Eigen::Index r = 0; r < out; ++r) layer.bias(r) = rng.normal(0.0, 0.1);
    layers.push_back(std::move(layer));
  }
  return Mlp(std::move(layers));
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim())
    fail(ErrorKind::InvalidInput, "input width " + std::to_string(x.size()) + " != " +
                                      std::to_string(input_dim()));
  Eigen::VectorXd h = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    h = layers_[i].weight * h + layers_[i].bias;
    if (i + 1 < layers_.size()) h = h.cwiseMax(0.0);
  }
  return h;
}

ProjectionHead ProjectionHead::make_default(Eigen::Index input_dim, std::uint64_t seed,
                                            Eigen::Index output_dim) {
  const Eigen::Index widths[] = {input_dim, input_dim, output_dim};
  return ProjectionHead(Mlp::random(widths, seed));
}

Eigen::VectorXd project(const Eigen::VectorXd& h, const ProjectionHead& head) {
  const Eigen::VectorXd z = head.mlp().forward(h);
  const double norm = z.norm();
  if (!(norm >= 1e-12)) fail(ErrorKind::DegenerateFeature, "projected feature has ~zero norm");
  return z / norm;
}

FeatureMatrix project_rows(const FeatureMatrix& h, const ProjectionHead& head) {
  FeatureMatrix out(h.rows(), head.mlp().output_dim());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    out.row(i) = project(h.row(i).transpose(), head).transpose();
  return out;
}

ToyEncoder::ToyEncoder(Mlp mlp) : mlp_(std::move(mlp)) {
  if (mlp_.input_dim() != 3) fail(ErrorKind::InvalidInput, "toy encoder consumes xyz");
}

ToyEncoder ToyEncoder::make_default(std::uint64_t seed, Eigen::Index width, int depth) {
  if (depth < 1) fail(ErrorKind::InvalidInput, "encoder depth must be at least 1");
  std::vector<Eigen::Index> widths{3};
  for (int i = 0; i < depth; ++i) widths.push_back(width);
  return ToyEncoder(Mlp::random(widths, seed));
}

FeatureMatrix ToyEncoder::encode(std::span<const Vec3> points) const {
  FeatureMatrix out(static_cast<Eigen::Index>(points.size()), output_dim());
  Eigen::VectorXd x(3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    x << points[i].x, points[i].y, points[i].z;
    out.row(static_cast<Eigen::Index>(i)) = mlp_.forward(x).transpose();
  }
  return out;
}

FeatureMatrix toy_encode(const RoomScene& scene, const ToyEncoder& encoder) {
  return encoder.encode(scene.points.points());
}

FeatureMatrix pool_by_instance(const FeatureMatrix& features,
                               std::span<const std::uint32_t> labels,
                               std::span<const std::uint32_t> shared_ids) {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    fail(ErrorKind::InvalidInput, "feature rows and labels differ in length");
  std::vector<std::uint32_t> ids(shared_ids.begin(), shared_ids.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    fail(ErrorKind::InvalidInput, "shared ids contain duplicates");
  if (!ids.empty() && ids.front() == 0)
    fail(ErrorKind::InvalidInput, "label 0 is reserved for confounders and cannot be pooled");

  FeatureMatrix sums = FeatureMatrix::Zero(static_cast<Eigen::Index>(ids.size()), features.cols());
  std::vector<std::size_t> counts(ids.size(), 0);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (labels[p] == 0) continue;
    auto it = std::lower_bound(ids.begin(), ids.end(), labels[p]);
    if (it == ids.end() || *it != labels[p]) continue;
    const auto k = it - ids.begin();
    sums.row(k) += features.row(static_cast<Eigen::Index>(p));
    ++counts[static_cast<std::size_t>(k)];
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (counts[k] == 0)
      fail(ErrorKind::MissingInstance, "instance " + std::to_string(ids[k]) + " has no points");
    sums.row(static_cast<Eigen::Index>(k)) /= static_cast<double>(counts[k]);
  }
  return sums;
}

void OclConfig::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    fail(ErrorKind::InvalidInput, "temperature must be positive");
}

namespace {

double dot(const double* a, const double* b, Eigen::Index d) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) s += a[k] * b[k];
  return s;
}

// Feature rows addressed uniformly. Each anchor scans its own room first,
// then the other room, then the extras; the fixed order makes the loss
// exactly symmetric under swapping the two rooms.
struct Batch {
  const FeatureMatrix& a;
  const FeatureMatrix& b;
  const FeatureMatrix& extras;
  Eigen::Index n;
  Eigen::Index m;
  Eigen::Index d;

  const double* row(int group, Eigen::Index i) const {
    const FeatureMatrix& src = group == 0 ? a : (group == 1 ? b : extras);
    return src.data() + i * d;
  }
};

Batch check_inputs(const FeatureMatrix& f_a, const FeatureMatrix& f_b,
                   const FeatureMatrix& extras, const OclConfig& cfg) {
  cfg.validate();
  validate_features(f_a, "f_a");
  validate_features(f_b, "f_b");
  if (f_a.rows() != f_b.rows() || f_a.cols() != f_b.cols())
    fail(ErrorKind::InvalidInput, "f_a and f_b must have matching shapes");
  const Eigen::Index m = extras.rows();
  if (m > 0) {
    validate_features(extras, "batch extras");
    if (extras.cols() != f_a.cols())
      fail(ErrorKind::InvalidInput, "batch extras have the wrong feature width");
  }
  if (f_a.rows() < 2 && m == 0)
    fail(ErrorKind::InvalidInput, "contrastive loss needs at least one negative");
  return Batch{f_a, f_b, extras, f_a.rows(), m, f_a.cols()};
}

// Visits every candidate of an anchor in canonical order:
// fn(group, index) with group 0 = anchor's room, 1 = other room, 2 = extras.
template <typename Fn>
void for_each_candidate(const Batch& batch, bool exclude_self, Eigen::Index self, Fn&& fn) {
  for (Eigen::Index j = 0; j < batch.n; ++j)
    if (!(exclude_self && j == self)) fn(0, j);
  for (Eigen::Index j = 0; j < batch.n; ++j) fn(1, j);
  for (Eigen::Index j = 0; j < batch.m; ++j) fn(2, j);
}

// Accumulates the loss of all anchors in one room; optionally the gradient.
double anchor_terms(const Batch& batch, bool anchors_in_a, const OclConfig& cfg,
                    FeatureMatrix* grad_own, FeatureMatrix* grad_other,
                    FeatureMatrix* grad_extras) {
  const FeatureMatrix& own = anchors_in_a ? batch.a : batch.b;
  const FeatureMatrix& other = anchors_in_a ? batch.b : batch.a;
  const Batch view{own, other, batch.extras, batch.n, batch.m, batch.d};
  const double inv_tau = 1.0 / cfg.temperature;
  const double weight = 1.0 / static_cast<double>(batch.n);
  std::vector<double> logits;
  logits.reserve(static_cast<std::size_t>(2 * batch.n + batch.m));

  double total = 0.0;
  for (Eigen::Index i = 0; i < batch.n; ++i) {
    const double* anchor = view.row(0, i);
    logits.clear();
    double max_logit = -std::numeric_limits<double>::infinity();
    for_each_candidate(view, cfg.exclude_self, i, [&](int g, Eigen::Index j) {
      const double s = dot(anchor, view.row(g, j), batch.d) * inv_tau;
      logits.push_back(s);
      max_logit = std::max(max_logit, s);
    });
    double sum = 0.0;
    for (double s : logits) sum += std::exp(s - max_logit);
    const double lse = max_logit + std::log(sum);
    const double positive = dot(anchor, view.row(1, i), batch.d) * inv_tau;
    total += lse - positive;

    if (grad_own) {
      // d(term)/d(anchor) = (sum_f p_f f - positive) / tau
      // d(term)/d(f) += p_f anchor / tau; d(term)/d(positive) -= anchor / tau
      const double scale = weight * inv_tau;
      auto anchor_row = Eigen::Map<const Eigen::RowVectorXd>(anchor, batch.d);
      std::size_t k = 0;
      for_each_candidate(view, cfg.exclude_self, i, [&](int g, Eigen::Index j) {
        const double p = std::exp(logits[k++] - lse);
        auto f = Eigen::Map<const Eigen::RowVectorXd>(view.row(g, j), batch.d);
        grad_own->row(i) += scale * p * f;
        FeatureMatrix* target = g == 0 ? grad_own : (g == 1 ? grad_other : grad_extras);
        target->row(j) += scale * p * anchor_row;
      });
      grad_own->row(i) -= scale * Eigen::Map<const Eigen::RowVectorXd>(view.row(1, i), batch.d);
      grad_other->row(i) -= scale * anchor_row;
    }
  }
  return total * weight;
}

}  // namespace

double ocl_loss(const FeatureMatrix& f_a, const FeatureMatrix& f_b, const FeatureMatrix& extras,
                const OclConfig& cfg) {
  const Batch batch = check_inputs(f_a, f_b, extras, cfg);
  return anchor_terms(batch, true, cfg, nullptr, nullptr, nullptr) +
         anchor_terms(batch, false, cfg, nullptr, nullptr, nullptr);
}

OclGradient ocl_grad(const FeatureMatrix& f_a, const FeatureMatrix& f_b,
                     const FeatureMatrix& extras, const OclConfig& cfg) {
  const Batch batch = check_inputs(f_a, f_b, extras, cfg);
  OclGradient g;
  g.grad_a = FeatureMatrix::Zero(batch.n, batch.d);
  g.grad_b = FeatureMatrix::Zero(batch.n, batch.d);
  g.grad_extras = FeatureMatrix::Zero(batch.m, batch.m > 0 ? batch.d : 0);
  const double la = anchor_terms(batch, true, cfg, &g.grad_a, &g.grad_b, &g.grad_extras);
  const double lb = anchor_terms(batch, false, cfg, &g.grad_b, &g.grad_a, &g.grad_extras);
  g.loss = la + lb;
  return g;
}

PairEmbedding embed_pair(const ScenePair& pair, const ToyEncoder& encoder,
                         const ProjectionHead& head) {
  if (pair.shared_ids.empty())
    fail(ErrorKind::DegeneratePair, "pair has no shared instances");
  PairEmbedding e;
  e.ids = pair.shared_ids;
  std::sort(e.ids.begin(), e.ids.end());
  const FeatureMatrix pooled_a =
      pool_by_instance(toy_encode(pair.room_a, encoder), pair.room_a.labels, e.ids);
  const FeatureMatrix pooled_b =
      pool_by_instance(toy_encode(pair.room_b, encoder), pair.room_b.labels, e.ids);
  e.f_a = project_rows(pooled_a, head);
  e.f_b = project_rows(pooled_b, head);
  return e;
}

double ocl_end_to_end(const ScenePair& pair, const ToyEncoder& encoder,
                      const ProjectionHead& head, const OclConfig& cfg,
                      const FeatureMatrix& extras) {
  const PairEmbedding e = embed_pair(pair, encoder, head);
  return ocl_loss(e.f_a, e.f_b, extras, cfg);
}

}  // namespace roomgen
