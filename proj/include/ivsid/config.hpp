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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ivsid/adaptation.hpp"
#include "ivsid/features.hpp"
#include "ivsid/gmm.hpp"
#include "ivsid/total_variability.hpp"

namespace ivsid {

/// Every tunable of the pipeline. Loaded from a key = value text file; '#'
/// starts a comment. Keys:
///
///   sample_rate   expected input rate in Hz, 0 accepts 8000/16000/32000
///   preemphasis  frame_ms  shift_ms  window (hamming|hanning)
///   n_filters  n_ceps  delta_window
///   components  em_iters  em_tol  seed
///   relevance  ivector_dim  whiten (true|false)
///   thresholds    comma separated, each in [0, 1]
struct PipelineConfig {
  int sample_rate = 0;
  FeatureConfig features;
  UbmTrainingOptions ubm;
  double relevance = kDefaultRelevance;
  TvFitOptions tv;
  std::vector<double> thresholds{0.8, 0.9, 1.0};

  /// Throws InvalidConfig on any out-of-range field.
  void validate() const;
};

/// Applies one key/value pair. Throws InvalidConfig on unknown keys or
/// unparsable values.
void apply_setting(PipelineConfig& config, std::string_view key,
                   std::string_view value);

/// Applies every setting in the file on top of the given config.
void load_config(const std::filesystem::path& path, PipelineConfig& config);

/// Serializes to the same key = value format load_config reads.
std::string to_text(const PipelineConfig& config);

std::vector<double> parse_double_list(std::string_view text);

}  // namespace ivsid
