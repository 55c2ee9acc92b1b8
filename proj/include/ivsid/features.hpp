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

#include "ivsid/audio.hpp"
#include "ivsid/error.hpp"

namespace ivsid {

/// Per-frame cepstral vectors, one frame per row: [static | delta | delta-delta].
struct FeatureMatrix {
  RowMatrix values;
  double frame_rate = 100.0;

  Eigen::Index num_frames() const { return values.rows(); }
  Eigen::Index dim() const { return values.cols(); }
};

/// Triangular mel filters over the non-negative FFT bins.
struct FilterBank {
  // n_filters x (nfft/2 + 1)
  RowMatrix weights;
  // n_filters + 2 mel-equispaced edges; filter i spans edges[i]..edges[i+2]
  // and peaks at edges[i+1].
  Eigen::VectorXd edges_hz;
  Eigen::Index nfft = 0;
  int sample_rate = 0;

  Eigen::Index size() const { return weights.rows(); }
  Eigen::VectorXd centers_hz() const {
    return edges_hz.segment(1, weights.rows());
  }
};

struct FeatureConfig {
  double preemphasis = 0.97;
  double frame_ms = 20.0;
  double shift_ms = 10.0;
  WindowKind window = WindowKind::kHamming;
  int n_filters = 40;
  int n_ceps = 13;
  int delta_window = 2;

  int feature_dim() const { return 3 * n_ceps; }
};

inline constexpr double kLogEnergyFloor = 1e-10;

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Smallest power of two >= n (n >= 1).
Eigen::Index next_pow2(Eigen::Index n);

/// |X[k]|^2 for k = 0..nfft/2 of the zero-padded DFT. nfft = 0 picks the
/// next power of two at or above the frame length.
Eigen::VectorXd power_spectrum(const Eigen::Ref<const Eigen::VectorXd>& frame,
                               Eigen::Index nfft = 0);

FilterBank build_filterbank(int n_filters, Eigen::Index nfft, int sample_rate);

/// Orthonormal DCT-II basis, k x n: row m is
/// s_m * cos(pi * m * (j + 0.5) / n) with s_0 = sqrt(1/n), s_m = sqrt(2/n).
RowMatrix dct_matrix(Eigen::Index k, Eigen::Index n);

/// First k DCT-II coefficients of log(max(energy, kLogEnergyFloor)).
Eigen::VectorXd cepstral_coefficients(
    const Eigen::Ref<const Eigen::VectorXd>& filterbank_energies, int k = 13);

/// Delta[m] = C[m + s] - C[m - s] over frames (rows), clamping indices to
/// the first/last frame. Output has the input's shape.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic,
              Eigen::RowMajor>
delta(const Eigen::MatrixBase<Derived>& ceps, int s = 2) {
  if (s < 1) {
    throw Error(ErrorCode::kInvalidConfig, "delta window must be >= 1");
  }
  const Eigen::Index n = ceps.rows();
  if (n == 0) {
    throw Error(ErrorCode::kEmptySequence, "delta of an empty sequence");
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic,
                Eigen::RowMajor>
      out(n, ceps.cols());
  for (Eigen::Index m = 0; m < n; ++m) {
    const Eigen::Index ahead = std::min<Eigen::Index>(m + s, n - 1);
    const Eigen::Index behind = std::max<Eigen::Index>(m - s, 0);
    out.row(m) = ceps.row(ahead) - ceps.row(behind);
  }
  return out;
}

/// pre-emphasis -> framing -> window -> power spectrum -> mel filterbank ->
/// log -> DCT -> delta -> delta-delta, concatenated per frame.
FeatureMatrix extract_features(const AudioSignal& signal,
                               const FeatureConfig& config = {});

}  // namespace ivsid
