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

#include "ivsid/synth.hpp"

#include <cstdio>
#include <random>

namespace ivsid {
namespace {

RowMatrix Gaussian(Eigen::Index rows, Eigen::Index cols, double sd,
                   std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, sd);
  RowMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

}  // namespace

RowMatrix sample_gmm(const GmmModel& model, int frames,
                     const Eigen::RowVectorXd& session_offset,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> pick(model.weights.data(),
                                       model.weights.data() + model.weights.size());
  std::normal_distribution<double> normal(0.0, 1.0);
  RowMatrix out(frames, model.dim());
  for (int t = 0; t < frames; ++t) {
    const int c = pick(rng);
    for (Eigen::Index d = 0; d < model.dim(); ++d) {
      out(t, d) = model.means(c, d) + std::sqrt(model.variances(c, d)) * normal(rng) +
                  session_offset(d);
    }
  }
  return out;
}

SynthCorpus make_synth_corpus(const SynthCorpusOptions& o) {
  if (o.speakers < 1 || o.components < 1 || o.dim < 1 || o.frames < 1 ||
      o.enroll_per_speaker < 0 || o.test_per_speaker < 0) {
    throw Error(ErrorCode::kInvalidConfig, "invalid synthetic corpus options");
  }
  std::mt19937_64 rng(o.seed);
  const RowMatrix classes = Gaussian(o.components, o.dim, o.class_spread, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SynthCorpus corpus;
  corpus.speakers.reserve(static_cast<std::size_t>(o.speakers));
  for (int s = 0; s < o.speakers; ++s) {
    SynthSpeaker spk;
    char id[32];
    std::snprintf(id, sizeof(id), "spk%02d", s + 1);
    spk.id = id;

    GmmModel& g = spk.generator;
    g.means = classes + Gaussian(o.components, o.dim, o.speaker_spread, rng);
    g.variances.resize(o.components, o.dim);
    for (Eigen::Index i = 0; i < g.variances.size(); ++i) {
      g.variances.data()[i] = 0.5 + unit(rng);
    }
    g.weights.resize(o.components);
    for (int c = 0; c < o.components; ++c) g.weights(c) = 1.0 + unit(rng);
    g.weights /= g.weights.sum();

    auto utterance = [&]() {
      const Eigen::RowVectorXd session = Gaussian(1, o.dim, o.session_spread, rng);
      FeatureMatrix fm;
      fm.values = sample_gmm(g, o.frames, session, rng());
      return fm;
    };
    for (int k = 0; k < o.enroll_per_speaker; ++k) spk.enroll.push_back(utterance());
    for (int k = 0; k < o.test_per_speaker; ++k) spk.test.push_back(utterance());
    corpus.speakers.push_back(std::move(spk));
  }
  return corpus;
}

}  // namespace ivsid
