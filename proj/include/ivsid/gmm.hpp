// Copyright (c) 2026 The ivsid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "ivsid/audio.hpp"
#include "ivsid/features.hpp"

namespace ivsid {

/// Diagonal-covariance Gaussian mixture. Used both as the universal
/// background model and as a MAP-adapted speaker model.
struct GmmModel {
  Eigen::VectorXd weights;  // L, on the simplex
  RowMatrix means;          // L x F
  RowMatrix variances;      // L x F, strictly positive

  Eigen::Index num_components() const { return weights.size(); }
  Eigen::Index dim() const { return means.cols(); }

  /// Throws InvalidConfig if shapes disagree, weights leave the simplex
  /// (1e-10) or any variance is non-positive or non-finite.
  void validate() const;
};

/// Per-component log(w_i) + log N(x; mu_i, diag(var_i)) for every frame.
RowMatrix component_log_likelihoods(const GmmModel& model,
                                    const Eigen::Ref<const RowMatrix>& frames);

struct Posteriors {
  RowMatrix gamma;              // K x L, rows sum to one
  Eigen::VectorXd log_density;  // K
};

Posteriors posteriors(const GmmModel& model,
                      const Eigen::Ref<const RowMatrix>& frames);

/// log sum_i w_i N(x; mu_i, diag(var_i)), evaluated with log-sum-exp.
double log_density(const GmmModel& model,
                   const Eigen::Ref<const Eigen::VectorXd>& x);

/// Posterior component probabilities for one vector.
Eigen::VectorXd responsibilities(const GmmModel& model,
                                 const Eigen::Ref<const Eigen::VectorXd>& x);

double average_log_likelihood(const GmmModel& model,
                              const Eigen::Ref<const RowMatrix>& frames);

struct UbmTrainingOptions {
  int components = 64;
  int max_iters = 50;
  double tol = 1e-5;
  std::uint64_t seed = 0;
  int kmeans_iters = 10;
  int subsample_per_component = 50;
  double relative_variance_floor = 1e-6;
};

struct UbmTrainingResult {
  GmmModel model;
  // Average per-frame log-likelihood, one entry per evaluated model; the
  // last entry belongs to the returned model.
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;
};

// Variances never drop below this, even when a feature dimension is constant.
inline constexpr double kAbsoluteVarianceFloor = 1e-10;

/// EM training seeded with k-means++ on a subsample. Deterministic for a
/// given seed. Throws TooFewFrames when data has fewer rows than components.
UbmTrainingResult train_ubm(const Eigen::Ref<const RowMatrix>& data,
                            const UbmTrainingOptions& options);

inline UbmTrainingResult train_ubm(const FeatureMatrix& data,
                                   const UbmTrainingOptions& options) {
  return train_ubm(data.values, options);
}

}  // namespace ivsid
