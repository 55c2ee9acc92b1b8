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

#include "ivsid/features.hpp"
#include "ivsid/gmm.hpp"

namespace ivsid {

/// Component means stacked in index order: [mu_1; mu_2; ...; mu_L].
struct Supervector {
  Eigen::VectorXd values;
  Eigen::Index feature_dim = 0;
  Eigen::Index components = 0;

  Eigen::Index size() const { return values.size(); }
};

inline constexpr double kDefaultRelevance = 16.0;

/// Relevance-MAP adaptation of the means only:
///   mu_i' = (sum_t gamma_ti x_t + r * mu_i) / (n_i + r),
/// which equals alpha_i E_i + (1 - alpha_i) mu_i with alpha_i = n_i/(n_i + r).
/// Weights and variances are copied from the background model.
GmmModel map_adapt_means(const GmmModel& ubm,
                         const Eigen::Ref<const RowMatrix>& utterance,
                         double relevance = kDefaultRelevance);

inline GmmModel map_adapt_means(const GmmModel& ubm,
                                const FeatureMatrix& utterance,
                                double relevance = kDefaultRelevance) {
  return map_adapt_means(ubm, utterance.values, relevance);
}

Supervector supervector(const GmmModel& model);

}  // namespace ivsid
