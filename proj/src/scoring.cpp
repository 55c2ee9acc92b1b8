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

#include "ivsid/scoring.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace ivsid {

NormalizedProfile NormalizedProfile::from_weights(
    const Eigen::Ref<const Eigen::VectorXd>& weights) {
  if (!weights.allFinite() || (weights.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidProfile,
                "profile weights must be finite and non-negative");
  }
  const double norm = weights.norm();
  if (!(norm > 0.0)) {
    throw Error(ErrorCode::kZeroVector, "profile weights are all zero");
  }
  return NormalizedProfile(weights / norm);
}

double divergence(const NormalizedProfile& px, const NormalizedProfile& py) {
  if (px.size() != py.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "profiles of dimension " + std::to_string(px.size()) + " and " +
                    std::to_string(py.size()));
  }
  const double overlap = px.values().dot(py.values());
  return std::acos(std::clamp(overlap, 0.0, 1.0));
}

double score_from_angle(double angle) {
  constexpr double kPi = std::numbers::pi;
  if (0.0 <= angle && angle <= kPi / 2) {
    return std::cos(angle);
  } else if (kPi / 2 < angle && angle <= 3 * kPi / 2) {
    return 0.0;
  } else {
    return std::cos(2 * kPi - angle);
  }
}

Prediction predict_score(const IVector& target, const IVector& test) {
  Prediction p;
  p.angle = std::acos(cosine_similarity(target.values, test.values));
  p.score = score_from_angle(p.angle);
  return p;
}

void validate_thresholds(std::span<const double> thresholds) {
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::kInvalidThreshold,
                  "threshold " + std::to_string(t) + " outside [0, 1]");
    }
  }
}

Decision decide(double score, double threshold) {
  validate_thresholds(std::span<const double>(&threshold, 1));
  return score >= threshold ? Decision::kAccept : Decision::kReject;
}

ScoreReport score_matrix(std::span<const LabeledIVector> tests,
                         std::span<const LabeledIVector> targets,
                         std::span<const double> thresholds) {
  validate_thresholds(thresholds);
  ScoreReport report;
  report.thresholds.assign(thresholds.begin(), thresholds.end());
  report.entries.reserve(tests.size() * targets.size());
  for (const auto& test : tests) {
    for (const auto& target : targets) {
      ScoreEntry entry{test.id, target.id, 0.0, 0.0, {}};
      try {
        const Prediction p = predict_score(target.ivector, test.ivector);
        entry.angle = p.angle;
        entry.score = p.score;
      } catch (const Error& e) {
        throw Error(e.code(), "(" + test.id + ", " + target.id + ") " + e.what());
      }
      entry.decisions.reserve(thresholds.size());
      for (double t : thresholds) entry.decisions.push_back(decide(entry.score, t));
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

std::string format_threshold(double threshold) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, threshold);
    if (std::strtod(buf, nullptr) == threshold) break;
  }
  return buf;
}

void write_score_csv(std::ostream& out, const ScoreReport& report) {
  out << "test_id,target_id,angle_rad,score";
  for (double t : report.thresholds) out << ",decision@" << format_threshold(t);
  out << '\n';
  char buf[64];
  for (const auto& e : report.entries) {
    std::snprintf(buf, sizeof(buf), "%.4f,%.4f", e.angle, e.score);
    out << e.test_id << ',' << e.target_id << ',' << buf;
    for (Decision d : e.decisions) {
      out << ',' << (d == Decision::kAccept ? "accept" : "reject");
    }
    out << '\n';
  }
}

Identification identify(const LabeledIVector& test,
                        std::span<const LabeledIVector> targets,
                        std::span<const double> thresholds) {
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptyTargetList, "no enrolled targets to score against");
  }
  Identification result;
  result.report = score_matrix(std::span<const LabeledIVector>(&test, 1), targets,
                               thresholds);
  result.accepted.resize(thresholds.size());
  double best = -1.0;
  for (const auto& e : result.report.entries) {
    if (e.score > best) {
      best = e.score;
      result.best_target = e.target_id;
    }
    for (std::size_t k = 0; k < e.decisions.size(); ++k) {
      if (e.decisions[k] == Decision::kAccept) result.accepted[k].push_back(e.target_id);
    }
  }
  result.best_score = best;
  return result;
}

}  // namespace ivsid
