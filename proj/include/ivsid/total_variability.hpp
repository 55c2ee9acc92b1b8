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
#include <span>
#include <string>
#include <vector>

#include "ivsid/adaptation.hpp"

namespace ivsid {

/// Low-dimensional coordinates of a supervector offset in the total
/// variability basis.
struct IVector {
  Eigen::VectorXd values;

  Eigen::Index size() const { return values.size(); }
};

/// Supervector = mean + basis * omega, with basis columns the leading
/// orthonormal eigenvectors of the training supervector covariance.
struct TotalVariabilityModel {
  Eigen::VectorXd mean;         // D, the background-model supervector
  Eigen::MatrixXd basis;        // D x c, orthonormal columns
  Eigen::VectorXd eigenvalues;  // c, descending, positive
  bool whiten = true;

  Eigen::Index supervector_dim() const { return mean.size(); }
  Eigen::Index ivector_dim() const { return basis.cols(); }
};

/// Eigenpairs of a symmetric matrix: values descending, vectors as columns,
/// each column signed so its largest-magnitude entry is positive.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

SymmetricEigen symmetric_eigen(const Eigen::Ref<const Eigen::MatrixXd>& matrix);

/// Flips each column so that its entry of largest magnitude is positive.
void canonicalize_signs(Eigen::MatrixXd& vectors);

/// (1/N) sum_n (x_n - m)(x_n - m)'. Throws DimensionMismatch or
/// TooFewSupervectors (N < 2).
Eigen::MatrixXd build_covariance(std::span<const Supervector> supervectors,
                                 const Supervector& mean);

inline constexpr int kDefaultIvectorDim = 400;

struct TvFitOptions {
  int ivector_dim = kDefaultIvectorDim;
  bool whiten = true;
  // Fail with RankDeficient instead of shrinking the dimension when fewer
  // eigenvalues than requested survive the floor.
  bool strict = false;
  double eigenvalue_floor = 1e-12;  // relative to the largest eigenvalue
};

struct TvFitResult {
  TotalVariabilityModel model;
  int requested_dim = 0;
  std::vector<std::string> warnings;
};

/// Eigendecomposes the supervector covariance and keeps the top eigenpairs.
/// The requested dimension is capped at min(D, N - 1); eigenvalues at or
/// below floor * largest are discarded. When D > N the decomposition runs on
/// the N x N Gram matrix and maps back, which yields the same nonzero
/// eigenpairs.
TvFitResult fit(std::span<const Supervector> supervectors,
                const Supervector& mean, const TvFitOptions& options = {});

/// omega = basis' (M - m), divided by sqrt(eigenvalue) when whitening.
IVector extract_ivector(const Supervector& supervector,
                        const TotalVariabilityModel& model);

}  // namespace ivsid
