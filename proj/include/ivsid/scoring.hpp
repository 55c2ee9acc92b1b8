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
#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ivsid/error.hpp"
#include "ivsid/total_variability.hpp"

namespace ivsid {

/// <a, b> / (|a| |b|), clamped to [-1, 1]. For a == b the result is exactly
/// one: the denominator is sqrt(<a,a><b,b>) and sqrt(fl(x * x)) == x.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vectors of dimension " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  // Same reduction for all three products, so a == b gives ab == aa == bb.
  const Scalar aa = a.reshaped().dot(a.reshaped());
  const Scalar bb = b.reshaped().dot(b.reshaped());
  if (!(aa > Scalar(0)) || !(bb > Scalar(0))) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero vector is undefined");
  }
  const Scalar ab = a.reshaped().dot(b.reshaped());
  const Scalar prod = aa * bb;
  const Scalar denom = (std::isfinite(prod) && prod > Scalar(0))
                           ? std::sqrt(prod)
                           : std::sqrt(aa) * std::sqrt(bb);
  return std::clamp(ab / denom, Scalar(-1), Scalar(1));
}

/// Non-negative profile with unit L2 norm. The divergence between two
/// profiles uses exponent 1 on the overlap sum, so self-overlap is exactly
/// sum p^2 = 1 and the self-divergence is arccos(1) = 0.
class NormalizedProfile {
 public:
  /// Normalizes non-negative weights to unit L2 norm. Throws InvalidProfile
  /// for negative or non-finite entries and ZeroVector for all zeros.
  static NormalizedProfile from_weights(const Eigen::Ref<const Eigen::VectorXd>& weights);

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }

 private:
  explicit NormalizedProfile(Eigen::VectorXd values) : values_(std::move(values)) {}
  Eigen::VectorXd values_;
};

/// arccos(sum_i px(i) py(i)), the argument clamped to [0, 1]. In [0, pi/2].
double divergence(const NormalizedProfile& px, const NormalizedProfile& py);

struct Prediction {
  double angle = 0.0;  // radians, [0, pi]
  double score = 0.0;  // [0, 1]
};

/// Piecewise angle-to-score map: cos(A) on [0, pi/2], 0 on (pi/2, 3pi/2],
/// cos(2pi - A) otherwise. Angles from arccos never reach the last branch.
double score_from_angle(double angle);

Prediction predict_score(const IVector& target, const IVector& test);

enum class Decision { kReject, kAccept };

/// Accept iff score >= threshold. Throws InvalidThreshold outside [0, 1].
Decision decide(double score, double threshold);

void validate_thresholds(std::span<const double> thresholds);

struct LabeledIVector {
  std::string id;
  IVector ivector;
};

struct ScoreEntry {
  std::string test_id;
  std::string target_id;
  double angle = 0.0;
  double score = 0.0;
  std::vector<Decision> decisions;  // one per report threshold
};

struct ScoreReport {
  std::vector<double> thresholds;
  std::vector<ScoreEntry> entries;  // test-major, targets in input order
};

ScoreReport score_matrix(std::span<const LabeledIVector> tests,
                         std::span<const LabeledIVector> targets,
                         std::span<const double> thresholds);

/// Shortest decimal that reads back as the same double.
std::string format_threshold(double threshold);

/// Header test_id,target_id,angle_rad,score,decision@<t>...; angle and score
/// with 4 decimals; decisions as accept/reject.
void write_score_csv(std::ostream& out, const ScoreReport& report);

struct Identification {
  ScoreReport report;
  std::string best_target;
  double best_score = 0.0;
  // accepted[k] lists target ids with score >= thresholds[k], in target order.
  std::vector<std::vector<std::string>> accepted;
};

/// Scores one test i-vector against every target. Throws EmptyTargetList.
Identification identify(const LabeledIVector& test,
                        std::span<const LabeledIVector> targets,
                        std::span<const double> thresholds);

}  // namespace ivsid
