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

#include "ivsid/audio.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace ivsid {
namespace {

std::uint16_t ReadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void PutU32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
  }
}

void PutTag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

bool IsSupportedSampleRate(int rate) {
  return rate == 8000 || rate == 16000 || rate == 32000;
}

AudioSignal read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kNotFound, "cannot open " + path.string());
  }
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                         std::istreambuf_iterator<char>()};
  const std::string where = path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kUnsupportedFormat,
                where + ": riff header is not RIFF/WAVE");
  }

  bool have_fmt = false;
  std::uint16_t audio_format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || available < 16) {
        throw Error(ErrorCode::kCorruptFile, where + ": truncated fmt chunk");
      }
      audio_format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      // Tolerate writers that leave a placeholder size on the data chunk.
      data_size = std::min<std::size_t>(size, available);
      break;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) {
    throw Error(ErrorCode::kCorruptFile, where + ": missing fmt chunk");
  }
  if (audio_format != 1) {
    throw Error(ErrorCode::kUnsupportedFormat,
                where + ": audio_format=" + std::to_string(audio_format) +
                    " (only PCM=1 is supported)");
  }
  if (channels != 1) {
    throw Error(ErrorCode::kUnsupportedFormat,
                where + ": num_channels=" + std::to_string(channels) +
                    " (only mono is supported)");
  }
  if (bits != 16) {
    throw Error(ErrorCode::kUnsupportedFormat,
                where + ": bits_per_sample=" + std::to_string(bits) +
                    " (only 16 is supported)");
  }
  if (!IsSupportedSampleRate(static_cast<int>(rate))) {
    throw Error(ErrorCode::kUnsupportedFormat,
                where + ": sample_rate=" + std::to_string(rate) +
                    " (expected 8000, 16000 or 32000)");
  }
  if (data == nullptr) {
    throw Error(ErrorCode::kCorruptFile, where + ": missing data chunk");
  }

  AudioSignal signal;
  signal.sample_rate = static_cast<int>(rate);
  const auto n = static_cast<Eigen::Index>(data_size / 2);
  signal.samples.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto raw = static_cast<std::int16_t>(ReadU16(data + 2 * i));
    signal.samples(i) = static_cast<double>(raw) / 32768.0;
  }
  return signal;
}

void write_wav(const std::filesystem::path& path, const AudioSignal& signal) {
  const auto n = static_cast<std::uint32_t>(signal.samples.size());
  const auto rate = static_cast<std::uint32_t>(signal.sample_rate);
  std::vector<unsigned char> out;
  out.reserve(44 + 2 * static_cast<std::size_t>(n));
  PutTag(out, "RIFF");
  PutU32(out, 36 + 2 * n);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, 1);
  PutU32(out, rate);
  PutU32(out, rate * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  PutTag(out, "data");
  PutU32(out, 2 * n);
  for (Eigen::Index i = 0; i < signal.samples.size(); ++i) {
    const double scaled = std::round(signal.samples(i) * 32768.0);
    const auto q = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    PutU16(out, static_cast<std::uint16_t>(q));
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
}

AudioSignal pre_emphasize(const AudioSignal& signal, double coeff) {
  if (!(coeff >= 0.0 && coeff < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "pre-emphasis coefficient must lie in [0, 1)");
  }
  AudioSignal out{signal.samples, signal.sample_rate};
  const Eigen::Index n = signal.samples.size();
  if (n > 1) {
    out.samples.tail(n - 1) -= coeff * signal.samples.head(n - 1);
  }
  return out;
}

FrameSequence frame_signal(const AudioSignal& signal, double frame_ms,
                           double shift_ms) {
  if (!(shift_ms > 0.0) || frame_ms < shift_ms) {
    throw Error(ErrorCode::kInvalidConfig,
                "frame length must be >= shift and shift must be positive");
  }
  const auto frame_len = static_cast<Eigen::Index>(
      std::lround(frame_ms * signal.sample_rate / 1000.0));
  const auto shift = static_cast<Eigen::Index>(
      std::lround(shift_ms * signal.sample_rate / 1000.0));
  if (frame_len < 1 || shift < 1) {
    throw Error(ErrorCode::kInvalidConfig, "frame or shift rounds to zero samples");
  }
  const Eigen::Index n = signal.samples.size();
  if (n < frame_len) {
    throw Error(ErrorCode::kSignalTooShort,
                std::to_string(n) + " samples, need at least " +
                    std::to_string(frame_len));
  }

  FrameSequence seq;
  seq.frame_len = frame_len;
  seq.shift = shift;
  seq.sample_rate = signal.sample_rate;
  const Eigen::Index count = frame_count(n, frame_len, shift);
  seq.frames.resize(count, frame_len);
  for (Eigen::Index f = 0; f < count; ++f) {
    seq.frames.row(f) = signal.samples.segment(f * shift, frame_len).transpose();
  }
  return seq;
}

}  // namespace ivsid
