#pragma once

#include "roomgen/ocl.hpp"

// Reference evaluations of the contrastive objective used to cross-check the
// production path. Nothing here shares code with ocl.cpp.
namespace roomgen::oracle {

// Term-by-term evaluation with plain exp/log and no stabilization.
double brute_force_ocl_loss(const FeatureMatrix& f_a, const FeatureMatrix& f_b,
                            const FeatureMatrix& extras, const OclConfig& cfg);

// Central differences of brute_force_ocl_loss with respect to every coordinate.
OclGradient finite_difference_grad(const FeatureMatrix& f_a, const FeatureMatrix& f_b,
                                   const FeatureMatrix& extras, const OclConfig& cfg,
                                   double h = 1e-4);

// ||analytic - numeric||_2 / max(||analytic||_2, ||numeric||_2) over all rows.
double gradient_relative_error(const OclGradient& analytic, const OclGradient& numeric);

// Lower bound on the loss for unit features: every positive logit is at
// most 1/tau and every other candidate at least -1/tau.
double loss_lower_bound(Eigen::Index candidates_per_anchor, double temperature);

}  // namespace roomgen::oracle
