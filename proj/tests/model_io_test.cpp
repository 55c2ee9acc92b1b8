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

#include "ivsid/model_io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "temp_dir.hpp"

namespace ivsid {
namespace {

using testing::TempDir;

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void Spit(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

template <typename Matrix>
Matrix Random(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 10.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kNotFound;
}

GmmModel RandomGmm(std::mt19937_64& rng) {
  GmmModel g;
  g.weights = Eigen::VectorXd::LinSpaced(3, 1.0, 3.0) / 6.0;
  g.means = Random<Eigen::MatrixXd>(3, 5, rng);
  g.variances = Random<Eigen::MatrixXd>(3, 5, rng).cwiseAbs().array() + 0.1;
  return g;
}

TEST(ModelIo, FeaturesRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(1);
  FeatureMatrix f;
  f.values = Random<RowMatrix>(7, 39, rng);
  f.values(0, 0) = -0.0;
  f.values(1, 1) = std::numeric_limits<double>::denorm_min();
  write_features(dir / "a.ivfx", f);
  const FeatureMatrix g = read_features(dir / "a.ivfx");
  ASSERT_EQ(g.values.rows(), 7);
  ASSERT_EQ(g.values.cols(), 39);
  EXPECT_EQ(std::memcmp(f.values.data(), g.values.data(), sizeof(double) * 7 * 39), 0);
  const std::string bytes = Slurp(dir / "a.ivfx");
  EXPECT_EQ(bytes.size(), 16u + 8u * 7 * 39);
  EXPECT_EQ(bytes.substr(0, 4), "IVFX");
  EXPECT_FALSE(std::filesystem::exists(dir / "a.ivfx.tmp"));
}

TEST(ModelIo, FeatureCsvUsesFullPrecision) {
  FeatureMatrix f;
  f.values.resize(2, 2);
  f.values << 0.1, -2.0, 1.0 / 3.0, 1e-300;
  std::ostringstream out;
  write_features_csv(out, f);
  std::istringstream in(out.str());
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    int col = 0;
    while (std::getline(cells, cell, ',')) {
      EXPECT_EQ(std::stod(cell), f.values(row, col));
      ++col;
    }
    EXPECT_EQ(col, 2);
    ++row;
  }
  EXPECT_EQ(row, 2);
}

TEST(ModelIo, GmmRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(2);
  const GmmModel g = RandomGmm(rng);
  write_gmm(dir / "u.ivgm", g);
  const GmmModel h = read_gmm(dir / "u.ivgm");
  EXPECT_EQ(g.weights, h.weights);
  EXPECT_EQ(g.means, h.means);
  EXPECT_EQ(g.variances, h.variances);
  write_gmm(dir / "v.ivgm", h);
  EXPECT_EQ(Slurp(dir / "u.ivgm"), Slurp(dir / "v.ivgm"));
}

TEST(ModelIo, SupervectorRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(3);
  Supervector sv{Random<Eigen::MatrixXd>(24, 1, rng), 3, 8};
  write_supervector(dir / "s.ivsv", sv);
  const Supervector t = read_supervector(dir / "s.ivsv");
  EXPECT_EQ(t.values, sv.values);
  EXPECT_EQ(t.feature_dim, 3);
  EXPECT_EQ(t.components, 8);
}

TEST(ModelIo, TvModelRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(4);
  for (bool whiten : {false, true}) {
    TotalVariabilityModel m;
    m.mean = Random<Eigen::MatrixXd>(9, 1, rng);
    m.basis = Random<Eigen::MatrixXd>(9, 4, rng);
    m.eigenvalues = Random<Eigen::MatrixXd>(4, 1, rng).cwiseAbs();
    m.whiten = whiten;
    write_tv_model(dir / "t.ivtv", m);
    const TotalVariabilityModel n = read_tv_model(dir / "t.ivtv");
    EXPECT_EQ(n.mean, m.mean);
    EXPECT_EQ(n.basis, m.basis);
    EXPECT_EQ(n.eigenvalues, m.eigenvalues);
    EXPECT_EQ(n.whiten, whiten);
  }
  // Basis is stored column-major: the first c-block after mean and
  // eigenvalues is column 0.
  TotalVariabilityModel m;
  m.mean = Eigen::VectorXd::Zero(2);
  m.eigenvalues = Eigen::VectorXd::Ones(2);
  m.basis.resize(2, 2);
  m.basis << 1, 2, 3, 4;
  write_tv_model(dir / "c.ivtv", m);
  const std::string bytes = Slurp(dir / "c.ivtv");
  double second = 0.0;
  std::memcpy(&second, bytes.data() + 17 + 8 * 4 + 8, 8);
  EXPECT_EQ(second, 3.0);
}

TEST(ModelIo, TargetListRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(5);
  TargetList list;
  for (const char* id : {"spk01", "a speaker", "\xc3\xa9l\xc3\xa8ve"}) {
    list.add(id, IVector{Random<Eigen::MatrixXd>(6, 1, rng)});
  }
  write_target_list(dir / "t.ivtl", list);
  const TargetList back = read_target_list(dir / "t.ivtl");
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.entries()[i].id, list.entries()[i].id);
    EXPECT_EQ(back.entries()[i].ivector.values, list.entries()[i].ivector.values);
  }
  write_target_list(dir / "e.ivtl", TargetList{});
  EXPECT_TRUE(read_target_list(dir / "e.ivtl").empty());
}

TEST(ModelIo, TargetListRules) {
  TargetList list;
  list.add("a", IVector{Eigen::VectorXd::Ones(3)});
  EXPECT_TRUE(list.contains("a"));
  EXPECT_EQ(list.ivector_dim(), 3);
  EXPECT_EQ(CodeOf([&] { list.add("a", IVector{Eigen::VectorXd::Ones(3)}); }),
            ErrorCode::kDuplicateTarget);
  EXPECT_EQ(CodeOf([&] { list.add("b", IVector{Eigen::VectorXd::Ones(4)}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(ModelIo, RejectsDamagedFiles) {
  TempDir dir;
  std::mt19937_64 rng(6);
  write_gmm(dir / "u.ivgm", RandomGmm(rng));
  const std::string good = Slurp(dir / "u.ivgm");

  EXPECT_EQ(CodeOf([&] { read_gmm(dir / "missing.ivgm"); }), ErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { read_features(dir / "u.ivgm"); }), ErrorCode::kCorruptFile);

  Spit(dir / "trunc.ivgm", good.substr(0, good.size() - 3));
  EXPECT_EQ(CodeOf([&] { read_gmm(dir / "trunc.ivgm"); }), ErrorCode::kCorruptFile);

  Spit(dir / "extra.ivgm", good + "x");
  EXPECT_EQ(CodeOf([&] { read_gmm(dir / "extra.ivgm"); }), ErrorCode::kCorruptFile);

  std::string version = good;
  version[4] = 2;
  Spit(dir / "v2.ivgm", version);
  EXPECT_EQ(CodeOf([&] { read_gmm(dir / "v2.ivgm"); }), ErrorCode::kUnsupportedFormat);

  // Huge declared sizes must fail cleanly rather than allocate.
  std::string huge = good.substr(0, 8) + std::string("\xff\xff\xff\xff\xff\xff\xff\x7f", 8);
  Spit(dir / "huge.ivgm", huge);
  EXPECT_EQ(CodeOf([&] { read_gmm(dir / "huge.ivgm"); }), ErrorCode::kCorruptFile);

  // Negative weight fails model validation.
  std::string bad_weight = good;
  bad_weight[16 + 7] = static_cast<char>(bad_weight[16 + 7] | 0x80);
  Spit(dir / "neg.ivgm", bad_weight);
  EXPECT_EQ(CodeOf([&] { read_gmm(dir / "neg.ivgm"); }), ErrorCode::kCorruptFile);

  Spit(dir / "empty.ivgm", "");
  EXPECT_EQ(CodeOf([&] { read_gmm(dir / "empty.ivgm"); }), ErrorCode::kCorruptFile);

  TotalVariabilityModel m;
  m.mean = Eigen::VectorXd::Zero(1);
  m.eigenvalues = Eigen::VectorXd::Ones(1);
  m.basis = Eigen::MatrixXd::Ones(1, 1);
  write_tv_model(dir / "t.ivtv", m);
  std::string flag = Slurp(dir / "t.ivtv");
  flag[16] = 7;
  Spit(dir / "t.ivtv", flag);
  EXPECT_EQ(CodeOf([&] { read_tv_model(dir / "t.ivtv"); }), ErrorCode::kCorruptFile);
}

}  // namespace
}  // namespace ivsid
