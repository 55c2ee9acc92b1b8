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
#include <cmath>
#include <filesystem>
#include <numbers>

#include "ivsid/error.hpp"

namespace ivsid {

using Signal = Eigen::VectorXd;
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Mono utterance with amplitudes normalized to [-1, 1].
struct AudioSignal {
  Signal samples;
  int sample_rate = 16000;

  Eigen::Index size() const { return samples.size(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Fixed-length slices of a signal, one frame per row.
struct FrameSequence {
  RowMatrix frames;
  Eigen::Index frame_len = 0;
  Eigen::Index shift = 0;
  int sample_rate = 0;

  Eigen::Index count() const { return frames.rows(); }
};

enum class WindowKind { kHamming, kHanning };

// Sample rates accepted on ingestion.
bool IsSupportedSampleRate(int rate);

/// Reads a 16-bit PCM mono RIFF/WAVE file. Samples are scaled by 1/32768.
/// Throws NotFound, UnsupportedFormat (naming the offending header field)
/// or CorruptFile.
AudioSignal read_wav(const std::filesystem::path& path);

/// Writes 16-bit PCM mono. Amplitudes are quantized as round(x * 32768) and
/// saturated to the int16 range.
void write_wav(const std::filesystem::path& path, const AudioSignal& signal);

/// y[0] = x[0], y[n] = x[n] - coeff * x[n-1].
AudioSignal pre_emphasize(const AudioSignal& signal, double coeff = 0.97);

/// Number of complete frames; trailing partial frames are dropped.
constexpr Eigen::Index frame_count(Eigen::Index num_samples,
                                   Eigen::Index frame_len,
                                   Eigen::Index shift) {
  if (num_samples < frame_len) return 0;
  return (num_samples - frame_len) / shift + 1;
}

/// Slices the signal into frame_ms frames every shift_ms. Throws
/// SignalTooShort when not even one frame fits and InvalidConfig on bad
/// durations.
FrameSequence frame_signal(const AudioSignal& signal, double frame_ms = 20.0,
                           double shift_ms = 10.0);

/// Window coefficients w[0..n-1]. A length-one window is {1}.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> window_coefficients(Eigen::Index n,
                                                             WindowKind kind) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(n);
  if (n == 1) {
    w(0) = Scalar(1);
    return w;
  }
  const Scalar denom = static_cast<Scalar>(n - 1);
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar c = std::cos(two_pi * static_cast<Scalar>(i) / denom);
    w(i) = kind == WindowKind::kHamming ? Scalar(0.54) - Scalar(0.46) * c
                                        : Scalar(0.5) * (Scalar(1) - c);
  }
  return w;
}

/// Elementwise product of a frame with the chosen window.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_window(
    const Eigen::MatrixBase<Derived>& frame, WindowKind kind) {
  using Scalar = typename Derived::Scalar;
  if (frame.size() == 0) {
    throw Error(ErrorCode::kEmptySequence, "cannot window an empty frame");
  }
  const auto w = window_coefficients<Scalar>(frame.size(), kind);
  return frame.derived().reshaped().cwiseProduct(w);
}

}  // namespace ivsid
