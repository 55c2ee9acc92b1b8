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

#include "ivsid/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ivsid/scoring.hpp"

namespace ivsid {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Bad(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kInvalidConfig,
              "bad value '" + std::string(value) + "' for " + std::string(key));
}

double ParseDouble(std::string_view key, std::string_view value) {
  const std::string text(Trim(value));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    Bad(key, value);
  }
  if (used != text.size()) Bad(key, value);
  return v;
}

template <typename Int>
Int ParseInt(std::string_view key, std::string_view value) {
  const std::string_view text = Trim(value);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) Bad(key, value);
  return v;
}

bool ParseBool(std::string_view key, std::string_view value) {
  const std::string_view text = Trim(value);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  Bad(key, value);
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = Trim(text.substr(start, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - start));
    if (!item.empty()) out.push_back(ParseDouble("list", item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view value) {
  key = Trim(key);
  if (key == "sample_rate") c.sample_rate = ParseInt<int>(key, value);
  else if (key == "preemphasis") c.features.preemphasis = ParseDouble(key, value);
  else if (key == "frame_ms") c.features.frame_ms = ParseDouble(key, value);
  else if (key == "shift_ms") c.features.shift_ms = ParseDouble(key, value);
  else if (key == "window") {
    const auto v = Trim(value);
    if (v == "hamming") c.features.window = WindowKind::kHamming;
    else if (v == "hanning") c.features.window = WindowKind::kHanning;
    else Bad(key, value);
  }
  else if (key == "n_filters") c.features.n_filters = ParseInt<int>(key, value);
  else if (key == "n_ceps") c.features.n_ceps = ParseInt<int>(key, value);
  else if (key == "delta_window") c.features.delta_window = ParseInt<int>(key, value);
  else if (key == "components") c.ubm.components = ParseInt<int>(key, value);
  else if (key == "em_iters") c.ubm.max_iters = ParseInt<int>(key, value);
  else if (key == "em_tol") c.ubm.tol = ParseDouble(key, value);
  else if (key == "seed") c.ubm.seed = ParseInt<std::uint64_t>(key, value);
  else if (key == "relevance") c.relevance = ParseDouble(key, value);
  else if (key == "ivector_dim") c.tv.ivector_dim = ParseInt<int>(key, value);
  else if (key == "whiten") c.tv.whiten = ParseBool(key, value);
  else if (key == "thresholds") c.thresholds = parse_double_list(value);
  else {
    throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + std::string(key) + "'");
  }
}

void load_config(const std::filesystem::path& path, PipelineConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open config " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    view = view.substr(0, view.find('#'));
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
  }
}

void PipelineConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidConfig, what);
  };
  require(sample_rate == 0 || IsSupportedSampleRate(sample_rate),
          "sample_rate must be 0, 8000, 16000 or 32000");
  require(features.preemphasis >= 0.0 && features.preemphasis < 1.0,
          "preemphasis must lie in [0, 1)");
  require(features.shift_ms > 0.0 && features.frame_ms >= features.shift_ms,
          "need frame_ms >= shift_ms > 0");
  require(features.n_filters >= 1, "n_filters must be >= 1");
  require(features.n_ceps >= 1 && features.n_ceps <= features.n_filters,
          "n_ceps must lie in [1, n_filters]");
  require(features.delta_window >= 1, "delta_window must be >= 1");
  require(ubm.components >= 1, "components must be >= 1");
  require(ubm.max_iters >= 1, "em_iters must be >= 1");
  require(ubm.tol >= 0.0, "em_tol must be >= 0");
  require(relevance > 0.0, "relevance must be positive");
  require(tv.ivector_dim >= 1, "ivector_dim must be >= 1");
  validate_thresholds(thresholds);
}

std::string to_text(const PipelineConfig& c) {
  std::ostringstream out;
  out << "sample_rate = " << c.sample_rate << '\n'
      << "preemphasis = " << Num(c.features.preemphasis) << '\n'
      << "frame_ms = " << Num(c.features.frame_ms) << '\n'
      << "shift_ms = " << Num(c.features.shift_ms) << '\n'
      << "window = "
      << (c.features.window == WindowKind::kHamming ? "hamming" : "hanning") << '\n'
      << "n_filters = " << c.features.n_filters << '\n'
      << "n_ceps = " << c.features.n_ceps << '\n'
      << "delta_window = " << c.features.delta_window << '\n'
      << "components = " << c.ubm.components << '\n'
      << "em_iters = " << c.ubm.max_iters << '\n'
      << "em_tol = " << Num(c.ubm.tol) << '\n'
      << "seed = " << c.ubm.seed << '\n'
      << "relevance = " << Num(c.relevance) << '\n'
      << "ivector_dim = " << c.tv.ivector_dim << '\n'
      << "whiten = " << (c.tv.whiten ? "true" : "false") << '\n'
      << "thresholds = ";
  for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
    out << (i ? "," : "") << format_threshold(c.thresholds[i]);
  }
  out << '\n';
  return out.str();
}

}  // namespace ivsid
