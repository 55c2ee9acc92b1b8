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

#include "ivsid/total_variability.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace ivsid {
namespace {

Eigen::MatrixXd CenteredRows(std::span<const Supervector> supervectors,
                             const Supervector& mean) {
  if (supervectors.size() < 2) {
    throw Error(ErrorCode::kTooFewSupervectors,
                "need at least 2 supervectors, got " +
                    std::to_string(supervectors.size()));
  }
  const Eigen::Index d = mean.size();
  Eigen::MatrixXd centered(static_cast<Eigen::Index>(supervectors.size()), d);
  for (std::size_t n = 0; n < supervectors.size(); ++n) {
    if (supervectors[n].size() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "supervector " + std::to_string(n) + " has dimension " +
                      std::to_string(supervectors[n].size()) + ", expected " +
                      std::to_string(d));
    }
    centered.row(static_cast<Eigen::Index>(n)) =
        (supervectors[n].values - mean.values).transpose();
  }
  return centered;
}

}  // namespace

void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

SymmetricEigen symmetric_eigen(const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kRankDeficient, "eigensolver did not converge");
  }
  // The solver returns ascending order.
  SymmetricEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  canonicalize_signs(out.vectors);
  return out;
}

Eigen::MatrixXd build_covariance(std::span<const Supervector> supervectors,
                                 const Supervector& mean) {
  const Eigen::MatrixXd centered = CenteredRows(supervectors, mean);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(centered.cols(), centered.cols());
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(),
                                                 1.0 / centered.rows());
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  return cov;
}

TvFitResult fit(std::span<const Supervector> supervectors,
                const Supervector& mean, const TvFitOptions& options) {
  if (options.ivector_dim < 1) {
    throw Error(ErrorCode::kInvalidConfig, "i-vector dimension must be >= 1");
  }
  const Eigen::MatrixXd centered = CenteredRows(supervectors, mean);
  const Eigen::Index n = centered.rows();
  const Eigen::Index d = centered.cols();

  TvFitResult result;
  result.requested_dim = options.ivector_dim;
  Eigen::Index dim = options.ivector_dim;
  const Eigen::Index cap = std::min(d, n - 1);
  if (dim > cap) {
    result.warnings.push_back("i-vector dimension reduced from " +
                              std::to_string(dim) + " to " + std::to_string(cap) +
                              " (min of supervector dim " + std::to_string(d) +
                              " and N-1 = " + std::to_string(n - 1) + ")");
    dim = cap;
  }

  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  if (d <= n) {
    const SymmetricEigen eig = symmetric_eigen(build_covariance(supervectors, mean));
    values = eig.values;
    vectors = eig.vectors;
  } else {
    // Dual route: C = X'X/N and G = XX'/N share their nonzero spectrum, and
    // v = X'u / sqrt(N * lambda) maps eigenvectors of G onto those of C.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0 / n);
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    const SymmetricEigen eig = symmetric_eigen(gram);
    values = eig.values;
    vectors = Eigen::MatrixXd::Zero(d, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (values(j) > 0.0) {
        vectors.col(j) = centered.transpose() * eig.vectors.col(j) /
                         std::sqrt(static_cast<double>(n) * values(j));
      }
    }
  }

  const double largest = values.size() > 0 ? values(0) : 0.0;
  Eigen::Index survivors = 0;
  if (largest > 0.0) {
    while (survivors < values.size() &&
           values(survivors) > options.eigenvalue_floor * largest) {
      ++survivors;
    }
  }
  if (survivors < dim) {
    if (options.strict || survivors == 0) {
      throw Error(ErrorCode::kRankDeficient,
                  std::to_string(survivors) + " eigenvalues above the floor, " +
                      std::to_string(dim) + " requested");
    }
    result.warnings.push_back("rank deficient: i-vector dimension reduced from " +
                              std::to_string(dim) + " to " +
                              std::to_string(survivors));
    dim = survivors;
  }

  TotalVariabilityModel& model = result.model;
  model.mean = mean.values;
  model.whiten = options.whiten;
  model.eigenvalues = values.head(dim);
  if (d <= n) {
    model.basis = vectors.leftCols(dim);
  } else {
    // Re-orthonormalize; the mapped vectors lose orthogonality in proportion
    // to largest/lambda_j.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(vectors.leftCols(dim));
    model.basis = qr.householderQ() * Eigen::MatrixXd::Identity(d, dim);
    canonicalize_signs(model.basis);
  }
  return result;
}

IVector extract_ivector(const Supervector& supervector,
                        const TotalVariabilityModel& model) {
  if (supervector.size() != model.supervector_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "supervector has dimension " + std::to_string(supervector.size()) +
                    ", total variability model expects " +
                    std::to_string(model.supervector_dim()));
  }
  IVector ivec;
  ivec.values = model.basis.transpose() * (supervector.values - model.mean);
  if (model.whiten) {
    ivec.values.array() /= model.eigenvalues.array().sqrt();
  }
  return ivec;
}

}  // namespace ivsid
