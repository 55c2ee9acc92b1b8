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

#include "ivsid/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace ivsid {
namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

void RequireDim(const GmmModel& model, Eigen::Index dim) {
  if (dim != model.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector has dimension " + std::to_string(dim) +
                    ", model expects " + std::to_string(model.dim()));
  }
}

// Terms are summed in ascending order so the result does not depend on the
// component order.
double LogSumExp(const Eigen::Ref<const Eigen::RowVectorXd>& v,
                 std::vector<double>& scratch) {
  scratch.assign(v.data(), v.data() + v.size());
  std::sort(scratch.begin(), scratch.end());
  const double top = scratch.back();
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : scratch) sum += std::exp(x - top);
  return top + std::log(sum);
}

Eigen::RowVectorXd ColumnVariance(const Eigen::Ref<const RowMatrix>& data) {
  const Eigen::RowVectorXd mean = data.colwise().mean();
  return (data.rowwise() - mean).array().square().colwise().sum().matrix() /
         static_cast<double>(data.rows());
}

// Lloyd's algorithm seeded by k-means++; returns centroids and assignments.
struct KMeansResult {
  RowMatrix centroids;
  std::vector<int> assignment;
};

double SquaredDistance(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                       const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  return (a - b).squaredNorm();
}

KMeansResult KMeans(const RowMatrix& points, int k, int iters,
                    std::mt19937_64& rng) {
  const Eigen::Index n = points.rows();
  KMeansResult result;
  result.centroids.resize(k, points.cols());

  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  Eigen::Index first = pick(rng);
  chosen[static_cast<std::size_t>(first)] = true;
  result.centroids.row(0) = points.row(first);

  Eigen::VectorXd nearest(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    nearest(p) = SquaredDistance(points.row(p), result.centroids.row(0));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    const double total = nearest.sum();
    Eigen::Index next = -1;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double running = 0.0;
      for (Eigen::Index p = 0; p < n; ++p) {
        running += nearest(p);
        if (running >= target && nearest(p) > 0.0) {
          next = p;
          break;
        }
      }
      if (next < 0) {
        for (Eigen::Index p = n - 1; p >= 0; --p) {
          if (nearest(p) > 0.0) {
            next = p;
            break;
          }
        }
      }
    }
    if (next < 0) {
      // Every remaining point coincides with a centroid.
      next = std::distance(chosen.begin(),
                           std::find(chosen.begin(), chosen.end(), false));
      if (next >= n) next = 0;
    }
    chosen[static_cast<std::size_t>(next)] = true;
    result.centroids.row(c) = points.row(next);
    for (Eigen::Index p = 0; p < n; ++p) {
      nearest(p) = std::min(nearest(p),
                            SquaredDistance(points.row(p), result.centroids.row(c)));
    }
  }

  result.assignment.assign(static_cast<std::size_t>(n), 0);
  for (int it = 0; it <= iters; ++it) {
    for (Eigen::Index p = 0; p < n; ++p) {
      Eigen::Index best = 0;
      (result.centroids.rowwise() - points.row(p))
          .rowwise()
          .squaredNorm()
          .minCoeff(&best);
      result.assignment[static_cast<std::size_t>(p)] = static_cast<int>(best);
    }
    if (it == iters) break;
    RowMatrix sums = RowMatrix::Zero(k, points.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index p = 0; p < n; ++p) {
      const int c = result.assignment[static_cast<std::size_t>(p)];
      sums.row(c) += points.row(p);
      counts(c) += 1.0;
    }
    for (int c = 0; c < k; ++c) {
      if (counts(c) > 0.0) result.centroids.row(c) = sums.row(c) / counts(c);
    }
  }
  return result;
}

GmmModel InitialModel(const RowMatrix& sample, int k, int iters,
                      const Eigen::RowVectorXd& global_var,
                      const Eigen::RowVectorXd& floor, std::mt19937_64& rng) {
  const KMeansResult km = KMeans(sample, k, iters, rng);
  const Eigen::Index dim = sample.cols();
  GmmModel model;
  model.weights.resize(k);
  model.means = km.centroids;
  model.variances.resize(k, dim);

  RowMatrix sq = RowMatrix::Zero(k, dim);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (Eigen::Index p = 0; p < sample.rows(); ++p) {
    const int c = km.assignment[static_cast<std::size_t>(p)];
    sq.row(c) += (sample.row(p) - km.centroids.row(c)).array().square().matrix();
    counts(c) += 1.0;
  }
  for (int c = 0; c < k; ++c) {
    if (counts(c) >= 2.0) {
      model.variances.row(c) = (sq.row(c) / counts(c)).cwiseMax(floor);
    } else {
      model.variances.row(c) = global_var.cwiseMax(floor);
    }
    model.weights(c) = (counts(c) + 1.0) / (static_cast<double>(sample.rows()) + k);
  }
  model.weights /= model.weights.sum();
  return model;
}

}  // namespace

void GmmModel::validate() const {
  const Eigen::Index l = weights.size();
  if (l < 1 || means.rows() != l || variances.rows() != l ||
      variances.cols() != means.cols() || means.cols() < 1) {
    throw Error(ErrorCode::kInvalidConfig, "inconsistent GMM shapes");
  }
  if ((weights.array() < 0.0).any() || std::abs(weights.sum() - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidConfig, "GMM weights are not on the simplex");
  }
  if (!means.allFinite() || !variances.allFinite() ||
      (variances.array() <= 0.0).any()) {
    throw Error(ErrorCode::kInvalidConfig,
                "GMM means must be finite and variances positive");
  }
}

RowMatrix component_log_likelihoods(const GmmModel& model,
                                    const Eigen::Ref<const RowMatrix>& frames) {
  RequireDim(model, frames.cols());
  const Eigen::Index l = model.num_components();
  const double f = static_cast<double>(model.dim());
  RowMatrix out(frames.rows(), l);
  for (Eigen::Index i = 0; i < l; ++i) {
    const Eigen::RowVectorXd inv_var = model.variances.row(i).cwiseInverse();
    const double log_norm =
        std::log(model.weights(i)) -
        0.5 * (f * kLog2Pi + model.variances.row(i).array().log().sum());
    out.col(i) =
        (log_norm -
         0.5 * ((frames.rowwise() - model.means.row(i)).array().square().rowwise() *
                inv_var.array())
                   .rowwise()
                   .sum())
            .matrix();
  }
  return out;
}

Posteriors posteriors(const GmmModel& model,
                      const Eigen::Ref<const RowMatrix>& frames) {
  Posteriors post;
  post.gamma = component_log_likelihoods(model, frames);
  post.log_density.resize(frames.rows());
  std::vector<double> scratch;
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    const double total = LogSumExp(post.gamma.row(t), scratch);
    post.log_density(t) = total;
    // std::exp rather than Eigen's packet exp: the latter clamps very
    // negative arguments to a tiny positive value instead of zero.
    post.gamma.row(t) =
        post.gamma.row(t).unaryExpr([total](double v) { return std::exp(v - total); });
  }
  return post;
}

double log_density(const GmmModel& model,
                   const Eigen::Ref<const Eigen::VectorXd>& x) {
  RequireDim(model, x.size());
  const RowMatrix row = x.transpose();
  std::vector<double> scratch;
  return LogSumExp(component_log_likelihoods(model, row).row(0), scratch);
}

Eigen::VectorXd responsibilities(const GmmModel& model,
                                 const Eigen::Ref<const Eigen::VectorXd>& x) {
  RequireDim(model, x.size());
  const RowMatrix row = x.transpose();
  return posteriors(model, row).gamma.row(0).transpose();
}

double average_log_likelihood(const GmmModel& model,
                              const Eigen::Ref<const RowMatrix>& frames) {
  return posteriors(model, frames).log_density.mean();
}

UbmTrainingResult train_ubm(const Eigen::Ref<const RowMatrix>& data,
                            const UbmTrainingOptions& options) {
  const int k = options.components;
  if (k < 1 || options.max_iters < 1 || options.kmeans_iters < 0 ||
      options.subsample_per_component < 1 || !(options.tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "invalid UBM training options");
  }
  const Eigen::Index n = data.rows();
  if (n < k) {
    throw Error(ErrorCode::kTooFewFrames,
                std::to_string(n) + " frames for " + std::to_string(k) +
                    " components");
  }
  if (!data.allFinite()) {
    throw Error(ErrorCode::kInvalidConfig, "training data contains non-finite values");
  }

  const Eigen::RowVectorXd global_var = ColumnVariance(data);
  const Eigen::RowVectorXd floor =
      (options.relative_variance_floor * global_var).cwiseMax(kAbsoluteVarianceFloor);
  const Eigen::RowVectorXd reset_var = global_var.cwiseMax(floor);

  std::mt19937_64 rng(options.seed);
  const Eigen::Index sample_size = std::min<Eigen::Index>(
      n, static_cast<Eigen::Index>(options.subsample_per_component) * k);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  if (sample_size < n) {
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(sample_size));
    std::sort(order.begin(), order.end());
  }
  RowMatrix sample(sample_size, data.cols());
  for (Eigen::Index p = 0; p < sample_size; ++p) {
    sample.row(p) = data.row(order[static_cast<std::size_t>(p)]);
  }

  UbmTrainingResult result;
  result.model = InitialModel(sample, k, options.kmeans_iters, global_var, floor, rng);
  GmmModel& model = result.model;
  const double frames = static_cast<double>(n);

  for (int iter = 0;; ++iter) {
    const Posteriors post = posteriors(model, data);
    const double ll = post.log_density.mean();
    if (!result.loglik_trace.empty()) {
      const double prev = result.loglik_trace.back();
      const double gain = (ll - prev) / std::max(std::abs(prev), 1e-300);
      result.loglik_trace.push_back(ll);
      if (gain < options.tol) {
        result.converged = true;
        break;
      }
    } else {
      result.loglik_trace.push_back(ll);
    }
    if (iter == options.max_iters) break;

    // M-step.
    const Eigen::VectorXd counts = post.gamma.colwise().sum().transpose();
    const RowMatrix first = post.gamma.transpose() * data;
    std::vector<Eigen::Index> worst(static_cast<std::size_t>(n));
    std::size_t next_worst = 0;
    bool sorted_worst = false;
    for (int i = 0; i < k; ++i) {
      if (counts(i) > 1e-10) {
        model.means.row(i) = first.row(i) / counts(i);
        const Eigen::RowVectorXd var =
            (post.gamma.col(i).transpose() *
             (data.rowwise() - model.means.row(i)).array().square().matrix()) /
            counts(i);
        model.variances.row(i) = var.cwiseMax(floor);
        model.weights(i) = counts(i) / frames;
      } else {
        // Empty component: move it onto the worst-explained frame.
        if (!sorted_worst) {
          std::iota(worst.begin(), worst.end(), Eigen::Index{0});
          std::stable_sort(worst.begin(), worst.end(),
                           [&](Eigen::Index a, Eigen::Index b) {
                             return post.log_density(a) < post.log_density(b);
                           });
          sorted_worst = true;
        }
        model.means.row(i) = data.row(worst[next_worst % worst.size()]);
        ++next_worst;
        model.variances.row(i) = reset_var;
        model.weights(i) = 1.0 / frames;
      }
    }
    model.weights /= model.weights.sum();
    result.iterations = iter + 1;
  }
  return result;
}

}  // namespace ivsid
