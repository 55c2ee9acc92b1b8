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

// ivsid: speaker identification with GMM-UBM supervectors, total variability
// i-vectors and cosine scoring.
//
//   ivsid featurize a.wav b.wav --out feats/
//   ivsid train-ubm feats/*.ivfx --out ubm.ivgm -J 64
//   ivsid train-tv feats/*.ivfx --ubm ubm.ivgm --out tv.ivtv
//   ivsid enroll alice1.wav alice2.wav --id alice --ubm ubm.ivgm --tv tv.ivtv \
//       --targets targets.ivtl
//   ivsid identify probe.wav --ubm ubm.ivgm --tv tv.ivtv --targets targets.ivtl \
//       --threshold 0.8,0.9,1.0 --out scores.csv

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ivsid/commands.hpp"
#include "ivsid/config.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> thresholds;
  std::optional<std::string> window;
  std::optional<int> components;
  std::optional<int> em_iters;
  std::optional<double> em_tol;
  std::optional<double> relevance;
  std::optional<int> ivector_dim;
  bool no_whiten = false;
  std::vector<std::string> settings;  // raw key=value pairs
};

ivsid::PipelineConfig Resolve(const Overrides& o) {
  ivsid::PipelineConfig config;
  if (!o.config_path.empty()) ivsid::load_config(o.config_path, config);
  for (const auto& kv : o.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ivsid::Error(ivsid::ErrorCode::kInvalidConfig,
                         "--set expects key=value, got '" + kv + "'");
    }
    ivsid::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) config.ubm.seed = *o.seed;
  if (o.thresholds) config.thresholds = ivsid::parse_double_list(*o.thresholds);
  if (o.window) ivsid::apply_setting(config, "window", *o.window);
  if (o.components) config.ubm.components = *o.components;
  if (o.em_iters) config.ubm.max_iters = *o.em_iters;
  if (o.em_tol) config.ubm.tol = *o.em_tol;
  if (o.relevance) config.relevance = *o.relevance;
  if (o.ivector_dim) config.tv.ivector_dim = *o.ivector_dim;
  if (o.no_whiten) config.tv.whiten = false;
  config.validate();
  return config;
}

void AddCommon(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value pipeline config file");
  cmd->add_option("--set", o.settings, "override one config key (key=value)");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--threshold", o.thresholds, "comma separated decision thresholds");
  cmd->add_option("--window", o.window, "analysis window: hamming or hanning");
  cmd->add_option("-J,--components", o.components, "UBM component count");
  cmd->add_option("--iters", o.em_iters, "maximum EM iterations");
  cmd->add_option("--tol", o.em_tol, "relative log-likelihood tolerance");
  cmd->add_option("--relevance", o.relevance, "MAP relevance factor");
  cmd->add_option("--ivector-dim", o.ivector_dim, "i-vector dimension");
  cmd->add_flag("--no-whiten", o.no_whiten, "skip eigenvalue whitening of i-vectors");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"i-vector speaker identification toolkit"};
  app.require_subcommand(1);
  Overrides overrides;
  ivsid::CommandIo io{std::cout, std::cerr};

  std::vector<std::string> inputs;
  std::string out, ubm, tv, targets, target_id, test_id;
  bool csv = false;

  auto* featurize = app.add_subcommand("featurize", "WAV -> IVFX feature dumps");
  featurize->add_option("inputs", inputs, "16-bit PCM mono WAV files");
  featurize->add_option("--out", out, "output directory");
  featurize->add_flag("--csv", csv, "also write a CSV next to each dump");

  auto* train_ubm = app.add_subcommand("train-ubm", "train the background GMM");
  train_ubm->add_option("inputs", inputs, "feature dumps or WAV files")->required();
  train_ubm->add_option("--out", out, "output IVGM file")->required();

  auto* train_tv = app.add_subcommand("train-tv", "fit the total variability basis");
  train_tv->add_option("inputs", inputs, "training utterances")->required();
  train_tv->add_option("--ubm", ubm, "background model (IVGM)")->required();
  train_tv->add_option("--out", out, "output IVTV file")->required();

  auto* enroll = app.add_subcommand("enroll", "add a speaker to the target list");
  enroll->add_option("inputs", inputs, "enrollment utterances of one speaker")->required();
  enroll->add_option("--id", target_id, "target speaker id")->required();
  enroll->add_option("--ubm", ubm, "background model (IVGM)")->required();
  enroll->add_option("--tv", tv, "total variability model (IVTV)")->required();
  enroll->add_option("--targets,--out", targets, "target list (IVTL), created if missing")
      ->required();

  auto* ident = app.add_subcommand("identify", "score a test utterance against targets");
  ident->add_option("inputs", inputs, "test utterance")->required()->expected(1);
  ident->add_option("--ubm", ubm, "background model (IVGM)")->required();
  ident->add_option("--tv", tv, "total variability model (IVTV)")->required();
  ident->add_option("--targets", targets, "target list (IVTL)")->required();
  ident->add_option("--out", out, "score CSV path (default: stdout)");
  ident->add_option("--test-id", test_id, "id printed in the CSV (default: file stem)");

  ivsid::SynthCorpusArgs synth;
  auto* synth_cmd = app.add_subcommand("synth-corpus", "write a seeded synthetic corpus");
  synth_cmd->group("");  // hidden
  synth_cmd->add_option("--out", synth.out_dir, "output directory")->required();
  synth_cmd->add_option("--speakers", synth.options.speakers);
  synth_cmd->add_option("--components", synth.options.components);
  synth_cmd->add_option("--dim", synth.options.dim);
  synth_cmd->add_option("--enroll", synth.options.enroll_per_speaker);
  synth_cmd->add_option("--test", synth.options.test_per_speaker);
  synth_cmd->add_option("--frames", synth.options.frames);
  synth_cmd->add_option("--seed", synth.options.seed);

  for (auto* cmd : {featurize, train_ubm, train_tv, enroll, ident}) AddCommon(cmd, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)
               ? ivsid::kExitOk
               : ivsid::kExitUsage;
  }

  if (synth_cmd->parsed()) return ivsid::cmd_synth_corpus(synth, io);

  ivsid::PipelineConfig config;
  try {
    config = Resolve(overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ivsid::kExitUsage;
  }

  std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
  if (featurize->parsed()) {
    return ivsid::cmd_featurize({paths, out, csv}, config, io);
  }
  if (train_ubm->parsed()) return ivsid::cmd_train_ubm({paths, out}, config, io);
  if (train_tv->parsed()) return ivsid::cmd_train_tv({paths, ubm, out}, config, io);
  if (enroll->parsed()) {
    return ivsid::cmd_enroll({paths, ubm, tv, targets, target_id}, config, io);
  }
  return ivsid::cmd_identify({paths.front(), ubm, tv, targets, out, test_id}, config, io);
}
