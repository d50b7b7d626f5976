#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "roomgen/geometry.hpp"
#include "roomgen/scene.hpp"

namespace roomgen {

// One feature vector per row. Row-major so each feature is contiguous.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void validate_features(const FeatureMatrix& m, const char* what);

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

// Shared-weight multi-layer perceptron with ReLU between layers and no
// activation after the last one.
class Mlp {
 public:
  explicit Mlp(std::vector<DenseLayer> layers);
  static Mlp random(std::span<const Eigen::Index> widths, std::uint64_t seed);

  Eigen::Index input_dim() const { return layers_.front().weight.cols(); }
  Eigen::Index output_dim() const { return layers_.back().weight.rows(); }
  const std::vector<DenseLayer>& layers() const noexcept { return layers_; }

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;

 private:
  std::vector<DenseLayer> layers_;
};

// MLP followed by L2 normalization onto the unit hypersphere.
class ProjectionHead {
 public:
  explicit ProjectionHead(Mlp mlp) : mlp_(std::move(mlp)) {}
  // input -> input -> output_dim, ReLU in between.
  static ProjectionHead make_default(Eigen::Index input_dim, std::uint64_t seed,
                                     Eigen::Index output_dim = 128);

  const Mlp& mlp() const noexcept { return mlp_; }

 private:
  Mlp mlp_;
};

Eigen::VectorXd project(const Eigen::VectorXd& h, const ProjectionHead& head);
FeatureMatrix project_rows(const FeatureMatrix& h, const ProjectionHead& head);

// Per-point stand-in for a real backbone: the same MLP applied to every xyz.
class ToyEncoder {
 public:
  explicit ToyEncoder(Mlp mlp);
  // 3 -> width -> ... -> width with `depth` layers.
  static ToyEncoder make_default(std::uint64_t seed, Eigen::Index width = 64, int depth = 3);

  Eigen::Index output_dim() const { return mlp_.output_dim(); }
  FeatureMatrix encode(std::span<const Vec3> points) const;

 private:
  Mlp mlp_;
};

FeatureMatrix toy_encode(const RoomScene& scene, const ToyEncoder& encoder);

// Mean feature of each shared id, rows in ascending id order. Label 0 never
// contributes.
FeatureMatrix pool_by_instance(const FeatureMatrix& features,
                               std::span<const std::uint32_t> labels,
                               std::span<const std::uint32_t> shared_ids);

struct OclConfig {
  double temperature = 0.1;
  bool exclude_self = true;

  void validate() const;
};

// Symmetric InfoNCE over matched rows of f_a and f_b. The candidate set for
// every anchor is all rows of f_a, f_b and extras (minus the anchor itself
// when exclude_self is set).
double ocl_loss(const FeatureMatrix& f_a, const FeatureMatrix& f_b, const FeatureMatrix& extras,
                const OclConfig& cfg);

struct OclGradient {
  double loss = 0.0;
  FeatureMatrix grad_a;
  FeatureMatrix grad_b;
  FeatureMatrix grad_extras;
};

// Exact gradient of ocl_loss with respect to every input row.
OclGradient ocl_grad(const FeatureMatrix& f_a, const FeatureMatrix& f_b,
                     const FeatureMatrix& extras, const OclConfig& cfg);

struct PairEmbedding {
  std::vector<std::uint32_t> ids;
  FeatureMatrix f_a;  // projected, unit rows
  FeatureMatrix f_b;
};

PairEmbedding embed_pair(const ScenePair& pair, const ToyEncoder& encoder,
                         const ProjectionHead& head);

double ocl_end_to_end(const ScenePair& pair, const ToyEncoder& encoder,
                      const ProjectionHead& head, const OclConfig& cfg,
                      const FeatureMatrix& extras = FeatureMatrix(0, 0));

}  // namespace roomgen
