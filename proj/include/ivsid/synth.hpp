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

#include <cstdint>
#include <string>
#include <vector>

#include "ivsid/features.hpp"
#include "ivsid/gmm.hpp"

namespace ivsid {

// Seeded stand-in for a real enrollment/test corpus. Every speaker owns a
// diagonal GMM whose components are shared "acoustic class" centers plus a
// speaker-specific offset; each utterance adds a session offset common to
// all of its frames.
struct SynthCorpusOptions {
  int speakers = 30;
  int components = 4;
  int dim = 39;
  int enroll_per_speaker = 2;
  int test_per_speaker = 1;
  int frames = 500;
  std::uint64_t seed = 1;
  double class_spread = 3.0;
  double speaker_spread = 1.0;
  double session_spread = 0.25;
};

struct SynthSpeaker {
  std::string id;
  GmmModel generator;
  std::vector<FeatureMatrix> enroll;
  std::vector<FeatureMatrix> test;
};

struct SynthCorpus {
  std::vector<SynthSpeaker> speakers;
};

SynthCorpus make_synth_corpus(const SynthCorpusOptions& options);

/// Draws frames from a GMM, each shifted by session_offset.
RowMatrix sample_gmm(const GmmModel& model, int frames,
                     const Eigen::RowVectorXd& session_offset,
                     std::uint64_t seed);

}  // namespace ivsid
