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

#include "ivsid/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ivsid/adaptation.hpp"
#include "ivsid/audio.hpp"
#include "ivsid/model_io.hpp"
#include "ivsid/scoring.hpp"
#include "ivsid/target_list.hpp"

namespace ivsid {
namespace {

bool IsWav(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".wav";
}

RowMatrix StackFrames(const std::vector<std::filesystem::path>& inputs,
                      const PipelineConfig& config) {
  std::vector<FeatureMatrix> parts;
  Eigen::Index rows = 0;
  for (const auto& path : inputs) {
    parts.push_back(load_utterance(path, config));
    if (parts.back().dim() != parts.front().dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  path.string() + " has " + std::to_string(parts.back().dim()) +
                      " columns, expected " + std::to_string(parts.front().dim()));
    }
    rows += parts.back().num_frames();
  }
  RowMatrix stacked(rows, parts.empty() ? 0 : parts.front().dim());
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    stacked.middleRows(at, p.num_frames()) = p.values;
    at += p.num_frames();
  }
  return stacked;
}

int Fail(CommandIo io, const std::exception& e) {
  io.err << "error: " << e.what() << '\n';
  return kExitFailure;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

FeatureMatrix load_utterance(const std::filesystem::path& path,
                             const PipelineConfig& config) {
  if (!IsWav(path)) return read_features(path);
  const AudioSignal signal = read_wav(path);
  if (config.sample_rate != 0 && signal.sample_rate != config.sample_rate) {
    throw Error(ErrorCode::kUnsupportedFormat,
                path.string() + ": sample_rate=" + std::to_string(signal.sample_rate) +
                    ", config expects " + std::to_string(config.sample_rate));
  }
  return extract_features(signal, config.features);
}

IVector utterance_ivector(const Eigen::Ref<const RowMatrix>& frames,
                          const GmmModel& ubm, const TotalVariabilityModel& tv,
                          double relevance) {
  const Eigen::Index sv_dim = ubm.num_components() * ubm.dim();
  if (sv_dim != tv.supervector_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "background model supervector dimension " + std::to_string(sv_dim) +
                    " vs total variability model dimension " +
                    std::to_string(tv.supervector_dim()));
  }
  return extract_ivector(supervector(map_adapt_means(ubm, frames, relevance)), tv);
}

int cmd_featurize(const FeaturizeArgs& args, const PipelineConfig& config,
                  CommandIo io) {
  if (args.inputs.empty()) {
    io.err << "featurize: no input files\n";
    return kExitUsage;
  }
  int failures = 0;
  try {
    config.validate();
    if (!args.out_dir.empty()) std::filesystem::create_directories(args.out_dir);
  } catch (const std::exception& e) {
    return Fail(io, e);
  }
  for (const auto& input : args.inputs) {
    try {
      const FeatureMatrix features = load_utterance(input, config);
      const std::filesystem::path base = args.out_dir / input.stem();
      std::filesystem::path out = base;
      out += ".ivfx";
      write_features(out, features);
      if (args.csv) {
        std::filesystem::path csv = base;
        csv += ".csv";
        std::ofstream file(csv);
        write_features_csv(file, features);
        if (!file) throw Error(ErrorCode::kIoFailure, "cannot write " + csv.string());
      }
      io.out << input.string() << ": " << features.num_frames() << " x "
             << features.dim() << " -> " << out.string() << '\n';
    } catch (const std::exception& e) {
      ++failures;
      io.err << "error: " << input.string() << ": " << e.what() << '\n';
    }
  }
  if (failures > 0) {
    io.err << failures << " of " << args.inputs.size() << " inputs failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_train_ubm(const TrainUbmArgs& args, const PipelineConfig& config,
                  CommandIo io) {
  if (args.inputs.empty() || args.out.empty()) {
    io.err << "train-ubm: need feature inputs and --out\n";
    return kExitUsage;
  }
  try {
    config.validate();
    const RowMatrix data = StackFrames(args.inputs, config);
    const UbmTrainingResult result = train_ubm(data, config.ubm);
    for (std::size_t i = 0; i < result.loglik_trace.size(); ++i) {
      io.out << "iter " << i << " avg_loglik " << Fixed(result.loglik_trace[i], 8)
             << '\n';
    }
    io.out << (result.converged ? "converged" : "stopped at max_iters") << " after "
           << result.iterations << " iterations; " << data.rows() << " frames, "
           << result.model.num_components() << " components\n";
    write_gmm(args.out, result.model);
  } catch (const std::exception& e) {
    return Fail(io, e);
  }
  return kExitOk;
}

int cmd_train_tv(const TrainTvArgs& args, const PipelineConfig& config,
                 CommandIo io) {
  if (args.inputs.empty() || args.ubm.empty() || args.out.empty()) {
    io.err << "train-tv: need feature inputs, --ubm and --out\n";
    return kExitUsage;
  }
  try {
    config.validate();
    const GmmModel ubm = read_gmm(args.ubm);
    std::vector<Supervector> supervectors;
    supervectors.reserve(args.inputs.size());
    for (const auto& input : args.inputs) {
      const FeatureMatrix features = load_utterance(input, config);
      supervectors.push_back(
          supervector(map_adapt_means(ubm, features.values, config.relevance)));
    }
    const TvFitResult result = fit(supervectors, supervector(ubm), config.tv);
    for (const auto& w : result.warnings) io.err << "warning: " << w << '\n';
    io.out << "total variability: D=" << result.model.supervector_dim()
           << " c=" << result.model.ivector_dim() << " from "
           << supervectors.size() << " utterances\n";
    write_tv_model(args.out, result.model);
  } catch (const std::exception& e) {
    return Fail(io, e);
  }
  return kExitOk;
}

int cmd_enroll(const EnrollArgs& args, const PipelineConfig& config, CommandIo io) {
  if (args.inputs.empty() || args.ubm.empty() || args.tv.empty() ||
      args.targets.empty() || args.target_id.empty()) {
    io.err << "enroll: need inputs, --ubm, --tv, --targets and --id\n";
    return kExitUsage;
  }
  try {
    config.validate();
    TargetList targets;
    if (std::filesystem::exists(args.targets)) targets = read_target_list(args.targets);
    if (targets.contains(args.target_id)) {
      throw Error(ErrorCode::kDuplicateTarget,
                  "target '" + args.target_id + "' is already enrolled");
    }
    const GmmModel ubm = read_gmm(args.ubm);
    const TotalVariabilityModel tv = read_tv_model(args.tv);
    const RowMatrix frames = StackFrames(args.inputs, config);
    IVector ivec = utterance_ivector(frames, ubm, tv, config.relevance);
    targets.add(args.target_id, std::move(ivec));
    write_target_list(args.targets, targets);
    io.out << "enrolled " << args.target_id << " (" << frames.rows()
           << " frames); target list has " << targets.size() << " entries\n";
  } catch (const std::exception& e) {
    return Fail(io, e);
  }
  return kExitOk;
}

int cmd_identify(const IdentifyArgs& args, const PipelineConfig& config,
                 CommandIo io) {
  if (args.input.empty() || args.ubm.empty() || args.tv.empty() ||
      args.targets.empty()) {
    io.err << "identify: need an input, --ubm, --tv and --targets\n";
    return kExitUsage;
  }
  try {
    config.validate();
    const TargetList targets = read_target_list(args.targets);
    if (targets.empty()) {
      throw Error(ErrorCode::kEmptyTargetList, args.targets.string() + " has no entries");
    }
    const GmmModel ubm = read_gmm(args.ubm);
    const TotalVariabilityModel tv = read_tv_model(args.tv);
    const FeatureMatrix features = load_utterance(args.input, config);
    const LabeledIVector test{
        args.test_id.empty() ? args.input.stem().string() : args.test_id,
        utterance_ivector(features.values, ubm, tv, config.relevance)};
    const Identification result = identify(test, targets.entries(), config.thresholds);

    if (args.out.empty()) {
      write_score_csv(io.out, result.report);
    } else {
      std::filesystem::path tmp = args.out;
      tmp += ".tmp";
      {
        std::ofstream file(tmp, std::ios::trunc);
        write_score_csv(file, result.report);
        if (!file) throw Error(ErrorCode::kIoFailure, "cannot write " + tmp.string());
      }
      std::filesystem::rename(tmp, args.out);
    }
    io.out << "top-1: " << result.best_target << " score "
           << Fixed(result.best_score, 4) << '\n';
    for (std::size_t k = 0; k < config.thresholds.size(); ++k) {
      io.out << "accept@" << format_threshold(config.thresholds[k]) << ":";
      for (const auto& id : result.accepted[k]) io.out << ' ' << id;
      io.out << '\n';
    }
  } catch (const std::exception& e) {
    return Fail(io, e);
  }
  return kExitOk;
}

int cmd_synth_corpus(const SynthCorpusArgs& args, CommandIo io) {
  if (args.out_dir.empty()) {
    io.err << "synth-corpus: need --out\n";
    return kExitUsage;
  }
  try {
    std::filesystem::create_directories(args.out_dir);
    const SynthCorpus corpus = make_synth_corpus(args.options);
    auto emit = [&](const std::string& id, const char* role, std::size_t k,
                    const FeatureMatrix& fm) {
      const auto path = args.out_dir / (id + "-" + role + "-" + std::to_string(k) + ".ivfx");
      write_features(path, fm);
    };
    for (const auto& spk : corpus.speakers) {
      for (std::size_t k = 0; k < spk.enroll.size(); ++k) emit(spk.id, "enroll", k, spk.enroll[k]);
      for (std::size_t k = 0; k < spk.test.size(); ++k) emit(spk.id, "test", k, spk.test[k]);
    }
    io.out << "wrote " << corpus.speakers.size() << " synthetic speakers to "
           << args.out_dir.string() << '\n';
  } catch (const std::exception& e) {
    return Fail(io, e);
  }
  return kExitOk;
}

}  // namespace ivsid
