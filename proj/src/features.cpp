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

#include "ivsid/features.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <unsupported/Eigen/FFT>

namespace ivsid {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

Eigen::Index next_pow2(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

Eigen::VectorXd power_spectrum(const Eigen::Ref<const Eigen::VectorXd>& frame,
                               Eigen::Index nfft) {
  if (nfft == 0) nfft = next_pow2(std::max<Eigen::Index>(frame.size(), 1));
  if (frame.size() > nfft) {
    throw Error(ErrorCode::kInvalidConfig,
                "frame length " + std::to_string(frame.size()) +
                    " exceeds nfft " + std::to_string(nfft));
  }
  if (nfft == 1) return Eigen::VectorXd::Constant(1, frame.size() ? frame(0) * frame(0) : 0.0);
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(nfft);
  padded.head(frame.size()) = frame.cast<std::complex<double>>();

  thread_local Eigen::FFT<double> fft;
  Eigen::VectorXcd spectrum(nfft);
  fft.fwd(spectrum, padded);
  return spectrum.head(nfft / 2 + 1).cwiseAbs2();
}

FilterBank build_filterbank(int n_filters, Eigen::Index nfft, int sample_rate) {
  if (n_filters < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n_filters must be >= 1");
  }
  if (nfft < 2 || (nfft & (nfft - 1)) != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "nfft must be a power of two >= 2, got " + std::to_string(nfft));
  }
  if (n_filters > nfft / 2) {
    throw Error(ErrorCode::kInvalidConfig,
                std::to_string(n_filters) + " filters exceed nfft/2 = " +
                    std::to_string(nfft / 2));
  }
  if (sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "sample rate must be positive");
  }

  FilterBank bank;
  bank.nfft = nfft;
  bank.sample_rate = sample_rate;
  const double top_mel = hz_to_mel(sample_rate / 2.0);
  bank.edges_hz.resize(n_filters + 2);
  for (int i = 0; i < n_filters + 2; ++i) {
    bank.edges_hz(i) = mel_to_hz(top_mel * i / (n_filters + 1));
  }
  bank.edges_hz(0) = 0.0;

  const Eigen::Index bins = nfft / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate) / nfft;
  bank.weights = RowMatrix::Zero(n_filters, bins);
  for (int i = 0; i < n_filters; ++i) {
    const double left = bank.edges_hz(i);
    const double center = bank.edges_hz(i + 1);
    const double right = bank.edges_hz(i + 2);
    for (Eigen::Index k = 0; k < bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f > left && f <= center) {
        w = (f - left) / (center - left);
      } else if (f > center && f < right) {
        w = (right - f) / (right - center);
      }
      bank.weights(i, k) = w;
    }
    if (bank.weights.row(i).maxCoeff() <= 0.0) {
      throw Error(ErrorCode::kInvalidConfig,
                  "filter " + std::to_string(i) +
                      " covers no FFT bin; use fewer filters or a larger nfft");
    }
  }
  return bank;
}

RowMatrix dct_matrix(Eigen::Index k, Eigen::Index n) {
  RowMatrix basis(k, n);
  const double pi = std::numbers::pi;
  for (Eigen::Index m = 0; m < k; ++m) {
    const double scale = std::sqrt((m == 0 ? 1.0 : 2.0) / n);
    for (Eigen::Index j = 0; j < n; ++j) {
      basis(m, j) = scale * std::cos(pi * m * (j + 0.5) / n);
    }
  }
  return basis;
}

Eigen::VectorXd cepstral_coefficients(
    const Eigen::Ref<const Eigen::VectorXd>& filterbank_energies, int k) {
  if (k < 1 || k > filterbank_energies.size()) {
    throw Error(ErrorCode::kInvalidConfig,
                "cannot take " + std::to_string(k) + " coefficients from " +
                    std::to_string(filterbank_energies.size()) + " energies");
  }
  const Eigen::VectorXd logs =
      filterbank_energies.cwiseMax(kLogEnergyFloor).array().log().matrix();
  return dct_matrix(k, logs.size()) * logs;
}

FeatureMatrix extract_features(const AudioSignal& signal,
                               const FeatureConfig& config) {
  if (config.n_ceps < 1 || config.n_ceps > config.n_filters) {
    throw Error(ErrorCode::kInvalidConfig, "n_ceps must lie in [1, n_filters]");
  }
  const AudioSignal emphasized = pre_emphasize(signal, config.preemphasis);
  const FrameSequence frames =
      frame_signal(emphasized, config.frame_ms, config.shift_ms);

  const Eigen::Index nfft = next_pow2(frames.frame_len);
  const FilterBank bank = build_filterbank(config.n_filters, nfft,
                                           signal.sample_rate);
  const RowMatrix dct = dct_matrix(config.n_ceps, config.n_filters);
  const Eigen::VectorXd window =
      window_coefficients(frames.frame_len, config.window);

  const Eigen::Index n = frames.count();
  RowMatrix statics(n, config.n_ceps);
  for (Eigen::Index f = 0; f < n; ++f) {
    const Eigen::VectorXd windowed =
        frames.frames.row(f).transpose().cwiseProduct(window);
    const Eigen::VectorXd energies = bank.weights * power_spectrum(windowed, nfft);
    const Eigen::VectorXd logs =
        energies.cwiseMax(kLogEnergyFloor).array().log().matrix();
    statics.row(f) = (dct * logs).transpose();
  }

  const RowMatrix d1 = delta(statics, config.delta_window);
  const RowMatrix d2 = delta(d1, config.delta_window);

  FeatureMatrix out;
  out.frame_rate = signal.sample_rate / static_cast<double>(frames.shift);
  out.values.resize(n, 3 * config.n_ceps);
  out.values << statics, d1, d2;
  return out;
}

}  // namespace ivsid
