#include "roomgen/ocl_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace roomgen::oracle {

namespace {

using Vec = std::vector<double>;

Vec row_of(const FeatureMatrix& m, Eigen::Index i) {
  Vec v(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index k = 0; k < m.cols(); ++k) v[static_cast<std::size_t>(k)] = m(i, k);
  return v;
}

double inner(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double frob_sq(const FeatureMatrix& m) { return m.size() ? m.squaredNorm() : 0.0; }

}  // namespace

double brute_force_ocl_loss(const FeatureMatrix& f_a, const FeatureMatrix& f_b,
                            const FeatureMatrix& extras, const OclConfig& cfg) {
  const Eigen::Index n = f_a.rows();
  const double tau = cfg.temperature;
  std::vector<Vec> all;
  for (Eigen::Index i = 0; i < n; ++i) all.push_back(row_of(f_a, i));
  for (Eigen::Index i = 0; i < n; ++i) all.push_back(row_of(f_b, i));
  for (Eigen::Index i = 0; i < extras.rows(); ++i) all.push_back(row_of(extras, i));

  auto term = [&](std::size_t anchor, std::size_t positive) {
    const double numerator = std::exp(inner(all[anchor], all[positive]) / tau);
    double denominator = 0.0;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (cfg.exclude_self && k == anchor) continue;
      denominator += std::exp(inner(all[anchor], all[k]) / tau);
    }
    return std::log(numerator / denominator);
  };

  double sum_a = 0.0;
  double sum_b = 0.0;
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < un; ++i) {
    sum_a += term(i, un + i);
    sum_b += term(un + i, i);
  }
  return -sum_a / static_cast<double>(n) - sum_b / static_cast<double>(n);
}

OclGradient finite_difference_grad(const FeatureMatrix& f_a, const FeatureMatrix& f_b,
                                   const FeatureMatrix& extras, const OclConfig& cfg, double h) {
  FeatureMatrix a = f_a;
  FeatureMatrix b = f_b;
  FeatureMatrix e = extras;
  auto loss = [&] { return brute_force_ocl_loss(a, b, e, cfg); };
  auto differentiate = [&](FeatureMatrix& target) {
    FeatureMatrix grad = FeatureMatrix::Zero(target.rows(), target.cols());
    for (Eigen::Index i = 0; i < target.rows(); ++i) {
      for (Eigen::Index k = 0; k < target.cols(); ++k) {
        const double saved = target(i, k);
        target(i, k) = saved + h;
        const double up = loss();
        target(i, k) = saved - h;
        const double down = loss();
        target(i, k) = saved;
        grad(i, k) = (up - down) / (2.0 * h);
      }
    }
    return grad;
  };
  OclGradient g;
  g.loss = loss();
  g.grad_a = differentiate(a);
  g.grad_b = differentiate(b);
  g.grad_extras = differentiate(e);
  return g;
}

double gradient_relative_error(const OclGradient& analytic, const OclGradient& numeric) {
  double diff = 0.0;
  diff += frob_sq(analytic.grad_a - numeric.grad_a);
  diff += frob_sq(analytic.grad_b - numeric.grad_b);
  if (analytic.grad_extras.size() || numeric.grad_extras.size())
    diff += frob_sq(analytic.grad_extras - numeric.grad_extras);
  const double na = frob_sq(analytic.grad_a) + frob_sq(analytic.grad_b) +
                    frob_sq(analytic.grad_extras);
  const double nn = frob_sq(numeric.grad_a) + frob_sq(numeric.grad_b) +
                    frob_sq(numeric.grad_extras);
  const double denom = std::sqrt(std::max(na, nn));
  if (denom == 0.0) return std::sqrt(diff);
  return std::sqrt(diff) / denom;
}

double loss_lower_bound(Eigen::Index candidates_per_anchor, double temperature) {
  const auto others = static_cast<double>(candidates_per_anchor - 1);
  return 2.0 * std::log1p(others * std::exp(-2.0 / temperature));
}

}  // namespace roomgen::oracle
