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

#include <gtest/gtest.h>

#include <cstdint>
#include <fstream>
#include <random>
#include <vector>

namespace ivsid {
namespace {

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ivsid_audio_" + name);
}

// Hand-assembled WAV so header fields can be corrupted one at a time.
void WriteRawWav(const std::filesystem::path& path, std::uint16_t format,
                 std::uint16_t channels, std::uint32_t rate, std::uint16_t bits,
                 const std::vector<std::int16_t>& samples) {
  std::vector<unsigned char> b;
  auto u16 = [&](std::uint16_t v) { b.push_back(v & 0xff); b.push_back(v >> 8); };
  auto u32 = [&](std::uint32_t v) { for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff); };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  tag("RIFF"); u32(36 + data_bytes); tag("WAVE");
  tag("fmt "); u32(16); u16(format); u16(channels); u32(rate);
  u32(rate * channels * bits / 8); u16(static_cast<std::uint16_t>(channels * bits / 8)); u16(bits);
  tag("data"); u32(data_bytes);
  for (auto s : samples) u16(static_cast<std::uint16_t>(s));
  std::ofstream(path, std::ios::binary).write(reinterpret_cast<const char*>(b.data()),
                                              static_cast<std::streamsize>(b.size()));
}

TEST(ReadWav, HeaderPassthroughAndScaling) {
  const auto path = TempPath("mono.wav");
  std::vector<std::int16_t> samples(16000, 0);
  samples[0] = 32767;
  samples[1] = -32768;
  samples[2] = 16384;
  WriteRawWav(path, 1, 1, 16000, 16, samples);
  const AudioSignal s = read_wav(path);
  EXPECT_EQ(s.sample_rate, 16000);
  ASSERT_EQ(s.size(), 16000);
  EXPECT_EQ(s.samples(0), 32767.0 / 32768.0);
  EXPECT_EQ(s.samples(1), -1.0);
  EXPECT_EQ(s.samples(2), 0.5);
}

TEST(ReadWav, RejectsUnsupportedHeaders) {
  const std::vector<std::int16_t> samples(100, 1);
  struct Case { std::uint16_t format, channels; std::uint32_t rate; std::uint16_t bits; const char* field; };
  for (const Case& c : {Case{1, 2, 16000, 16, "num_channels"}, Case{3, 1, 16000, 16, "audio_format"},
                        Case{1, 1, 16000, 8, "bits_per_sample"}, Case{1, 1, 44100, 16, "sample_rate"}}) {
    const auto path = TempPath(std::string(c.field) + ".wav");
    WriteRawWav(path, c.format, c.channels, c.rate, c.bits, samples);
    try {
      read_wav(path);
      FAIL() << "accepted " << c.field;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFormat);
      EXPECT_NE(std::string(e.what()).find(c.field), std::string::npos) << e.what();
    }
  }
}

TEST(ReadWav, MissingFileIsNotFound) {
  try {
    read_wav(TempPath("does_not_exist.wav"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(ReadWav, RoundTripsThroughWriter) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> q(-32768, 32767);
  AudioSignal s;
  s.sample_rate = 8000;
  s.samples.resize(777);
  for (auto& v : s.samples) v = q(rng) / 32768.0;
  const auto path = TempPath("rt.wav");
  write_wav(path, s);
  const AudioSignal back = read_wav(path);
  EXPECT_EQ(back.sample_rate, 8000);
  EXPECT_EQ(back.samples, s.samples);
}

TEST(PreEmphasize, DifferenceEquation) {
  AudioSignal s{Eigen::Vector3d(1, 1, 1), 16000};
  const AudioSignal y = pre_emphasize(s, 0.97);
  EXPECT_DOUBLE_EQ(y.samples(0), 1.0);
  EXPECT_NEAR(y.samples(1), 0.03, 1e-15);
  EXPECT_NEAR(y.samples(2), 0.03, 1e-15);
  EXPECT_TRUE(pre_emphasize(AudioSignal{Eigen::VectorXd::Zero(10), 16000}).samples.isZero());
  EXPECT_THROW(pre_emphasize(s, 1.0), Error);
}

TEST(PreEmphasize, ZeroCoefficientIsIdentity) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    AudioSignal s;
    s.samples.resize(1 + trial * 7);
    for (auto& v : s.samples) v = n(rng);
    EXPECT_EQ(pre_emphasize(s, 0.0).samples, s.samples);
  }
}

TEST(FrameSignal, OneSecondAt16k) {
  AudioSignal s{Eigen::VectorXd::LinSpaced(16000, 0, 1), 16000};
  const FrameSequence f = frame_signal(s);
  EXPECT_EQ(f.count(), 99);
  EXPECT_EQ(f.frame_len, 320);
  EXPECT_EQ(f.shift, 160);
  EXPECT_EQ(f.frames.row(3).transpose(), s.samples.segment(480, 320));
}

TEST(FrameSignal, Boundaries) {
  AudioSignal exact{Eigen::VectorXd::Ones(320), 16000};
  EXPECT_EQ(frame_signal(exact).count(), 1);
  AudioSignal shorter{Eigen::VectorXd::Ones(319), 16000};
  try {
    frame_signal(shorter);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSignalTooShort);
  }
  EXPECT_THROW(frame_signal(exact, 10.0, 20.0), Error);
}

TEST(FrameSignal, CountMatchesLoopRecount) {
  std::mt19937_64 rng(3);
  const int rates[] = {8000, 16000, 32000};
  std::uniform_int_distribution<int> len(0, 40000), pick(0, 2);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(rng);
    const int rate = rates[pick(rng)];
    const Eigen::Index frame_len = rate / 50, shift = rate / 100;
    Eigen::Index recount = 0;
    for (Eigen::Index start = 0; start + frame_len <= n; start += shift) ++recount;
    EXPECT_EQ(frame_count(n, frame_len, shift), recount);
    if (n >= frame_len) {
      AudioSignal s{Eigen::VectorXd::Zero(n), rate};
      EXPECT_EQ(frame_signal(s).count(), recount);
    }
  }
}

TEST(Window, EndpointsAndMidpoint) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(321);
  const Eigen::VectorXd ham = apply_window(ones, WindowKind::kHamming);
  EXPECT_NEAR(ham(0), 0.08, 1e-15);
  EXPECT_NEAR(ham(320), 0.08, 1e-15);
  const Eigen::VectorXd han = apply_window(ones, WindowKind::kHanning);
  EXPECT_EQ(han(0), 0.0);
  EXPECT_NEAR(han(320), 0.0, 1e-15);
  EXPECT_NEAR(han(160), 1.0, 1e-15);
  EXPECT_THROW(apply_window(Eigen::VectorXd(), WindowKind::kHamming), Error);
}

TEST(Window, NeverIncreasesMagnitude) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd frame(2 + trial);
    for (auto& v : frame) v = n(rng);
    for (auto kind : {WindowKind::kHamming, WindowKind::kHanning}) {
      const Eigen::VectorXd w = apply_window(frame, kind);
      EXPECT_TRUE((w.array().abs() <= frame.array().abs()).all());
    }
  }
}

TEST(Window, WorksForFloatScalars) {
  const Eigen::VectorXf frame = Eigen::VectorXf::Ones(5);
  const Eigen::VectorXf w = apply_window(frame, WindowKind::kHanning);
  EXPECT_FLOAT_EQ(w(2), 1.0f);
}

}  // namespace
}  // namespace ivsid
