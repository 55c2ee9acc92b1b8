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
#include <iosfwd>
#include <string>
#include <vector>

#include "ivsid/config.hpp"
#include "ivsid/features.hpp"
#include "ivsid/gmm.hpp"
#include "ivsid/synth.hpp"
#include "ivsid/total_variability.hpp"

namespace ivsid {

// Process exit codes shared by every verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CommandIo {
  std::ostream& out;
  std::ostream& err;
};

/// Loads an utterance: .wav files go through feature extraction, anything
/// else is read as an IVFX feature dump.
FeatureMatrix load_utterance(const std::filesystem::path& path,
                             const PipelineConfig& config);

/// MAP-adapts the background model to the frames and projects the
/// supervector. Throws DimensionMismatch naming both dimensions when the
/// models disagree.
IVector utterance_ivector(const Eigen::Ref<const RowMatrix>& frames,
                          const GmmModel& ubm, const TotalVariabilityModel& tv,
                          double relevance);

struct FeaturizeArgs {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir;
  bool csv = false;
};
int cmd_featurize(const FeaturizeArgs& args, const PipelineConfig& config,
                  CommandIo io);

struct TrainUbmArgs {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out;
};
int cmd_train_ubm(const TrainUbmArgs& args, const PipelineConfig& config,
                  CommandIo io);

struct TrainTvArgs {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path ubm;
  std::filesystem::path out;
};
int cmd_train_tv(const TrainTvArgs& args, const PipelineConfig& config,
                 CommandIo io);

struct EnrollArgs {
  // All inputs belong to the same speaker; their frames are pooled.
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path ubm;
  std::filesystem::path tv;
  std::filesystem::path targets;
  std::string target_id;
};
int cmd_enroll(const EnrollArgs& args, const PipelineConfig& config, CommandIo io);

struct IdentifyArgs {
  std::filesystem::path input;
  std::filesystem::path ubm;
  std::filesystem::path tv;
  std::filesystem::path targets;
  std::filesystem::path out;  // empty: CSV goes to io.out
  std::string test_id;        // empty: input file stem
};
int cmd_identify(const IdentifyArgs& args, const PipelineConfig& config,
                 CommandIo io);

struct SynthCorpusArgs {
  std::filesystem::path out_dir;
  SynthCorpusOptions options;
};
/// Writes <id>-enroll-<k>.ivfx and <id>-test-<k>.ivfx per synthetic speaker.
int cmd_synth_corpus(const SynthCorpusArgs& args, CommandIo io);

}  // namespace ivsid
