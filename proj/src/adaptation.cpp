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

#include "ivsid/adaptation.hpp"

#include <string>

namespace ivsid {

GmmModel map_adapt_means(const GmmModel& ubm,
                         const Eigen::Ref<const RowMatrix>& utterance,
                         double relevance) {
  if (utterance.cols() != ubm.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "utterance has dimension " + std::to_string(utterance.cols()) +
                    ", background model expects " + std::to_string(ubm.dim()));
  }
  if (utterance.rows() == 0) {
    throw Error(ErrorCode::kEmptyUtterance, "no frames to adapt on");
  }
  if (!(relevance > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "relevance factor must be positive");
  }

  const Posteriors post = posteriors(ubm, utterance);
  const Eigen::VectorXd counts = post.gamma.colwise().sum().transpose();
  const RowMatrix first = post.gamma.transpose() * utterance;

  GmmModel adapted = ubm;
  for (Eigen::Index i = 0; i < ubm.num_components(); ++i) {
    adapted.means.row(i) =
        (first.row(i) + relevance * ubm.means.row(i)) / (counts(i) + relevance);
  }
  return adapted;
}

Supervector supervector(const GmmModel& model) {
  Supervector sv;
  sv.feature_dim = model.dim();
  sv.components = model.num_components();
  // Row-major storage is exactly the concatenation mu_1 || mu_2 || ...
  sv.values = model.means.reshaped<Eigen::RowMajor>();
  return sv;
}

}  // namespace ivsid
