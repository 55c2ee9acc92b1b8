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

#include "ivsid/total_variability.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace ivsid {
namespace {

Supervector Sv(const Eigen::VectorXd& v) { return Supervector{v, v.size(), 1}; }

std::vector<Supervector> RandomSet(int n, int d, std::mt19937_64& rng,
                                   const Eigen::VectorXd& scales) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Supervector> out;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v(d);
    for (int k = 0; k < d; ++k) v(k) = scales(k) * normal(rng) + 0.3;
    out.push_back(Sv(v));
  }
  return out;
}

Eigen::VectorXd Scales(int d) { return Eigen::VectorXd::LinSpaced(d, 3.0, 0.5); }

TEST(BuildCovariance, SmallCases) {
  const Supervector m = Sv(Eigen::Vector3d(1, 2, 3));
  const std::vector<Supervector> same(4, m);
  EXPECT_TRUE(build_covariance(same, m).isZero());

  const double a = 1.7;
  const Supervector c = Sv(Eigen::VectorXd::Constant(1, 5.0));
  const std::vector<Supervector> pair{Sv(Eigen::VectorXd::Constant(1, 5.0 + a)),
                                      Sv(Eigen::VectorXd::Constant(1, 5.0 - a))};
  EXPECT_NEAR(build_covariance(pair, c)(0, 0), a * a, 1e-14);
}

TEST(BuildCovariance, MatchesTwoPassOracle) {
  std::mt19937_64 rng(13);
  const auto data = RandomSet(5, 4, rng, Scales(4));
  const Supervector m = Sv(Eigen::Vector4d(0.1, -0.2, 0.3, 0.0));
  std::vector<Eigen::VectorXd> raw;
  for (const auto& s : data) raw.push_back(s.values);
  const Eigen::MatrixXd ref = oracle::TwoPassCovariance(raw, m.values);
  const Eigen::MatrixXd cov = build_covariance(data, m);
  EXPECT_LT((cov - ref).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(cov, cov.transpose());
}

TEST(BuildCovariance, Errors) {
  const Supervector m = Sv(Eigen::Vector2d(0, 0));
  try {
    build_covariance(std::vector<Supervector>{m}, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewSupervectors);
  }
  try {
    build_covariance(std::vector<Supervector>{m, Sv(Eigen::Vector3d(0, 0, 0))}, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(SymmetricEigen, MatchesJacobiOracle) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd a = oracle::RandomSymmetric(1 + trial % 6, rng);
    const SymmetricEigen eig = symmetric_eigen(a);
    const oracle::EigenPairs ref = oracle::Jacobi(a);
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
      EXPECT_NEAR(eig.values(j), ref.values[j], 1e-10);
      EXPECT_LT(oracle::SignlessDistance(eig.vectors.col(j), ref.vectors[j]), 1e-7);
      Eigen::Index arg = 0;
      eig.vectors.col(j).cwiseAbs().maxCoeff(&arg);
      EXPECT_GT(eig.vectors(arg, j), 0.0);
    }
  }
}

TEST(Fit, FullBasisReconstructs) {
  std::mt19937_64 rng(15);
  const auto data = RandomSet(12, 5, rng, Scales(5));
  const Supervector m = Sv(Eigen::VectorXd::Zero(5));
  TvFitOptions opt;
  opt.ivector_dim = 5;
  opt.whiten = false;
  const TvFitResult r = fit(data, m, opt);
  ASSERT_EQ(r.model.ivector_dim(), 5);
  EXPECT_TRUE(r.warnings.empty());
  for (const auto& s : data) {
    const IVector w = extract_ivector(s, r.model);
    EXPECT_LT((r.model.basis * w.values - (s.values - m.values)).norm(), 1e-8);
    EXPECT_NEAR(w.values.norm(), (s.values - m.values).norm(), 1e-9);
  }
}

TEST(Fit, AxisAlignedVariance) {
  const Supervector m = Sv(Eigen::Vector3d(1, 1, 1));
  std::vector<Supervector> data;
  for (double t : {-2.0, -0.5, 0.5, 1.0, 1.5}) data.push_back(Sv(Eigen::Vector3d(1 + t, 1, 1)));
  TvFitOptions opt;
  opt.ivector_dim = 1;
  const TvFitResult one = fit(data, m, opt);
  EXPECT_LT((one.model.basis.col(0) - Eigen::Vector3d(1, 0, 0)).norm(), 1e-12);

  opt.ivector_dim = 3;
  const TvFitResult shrunk = fit(data, m, opt);
  EXPECT_EQ(shrunk.model.ivector_dim(), 1);
  ASSERT_FALSE(shrunk.warnings.empty());

  opt.strict = true;
  try {
    fit(data, m, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
  }
}

TEST(Fit, IdenticalSupervectorsAreRankDeficient) {
  const Supervector m = Sv(Eigen::Vector3d(1, 2, 3));
  // Identical points away from m leave exactly one direction with variance.
  const std::vector<Supervector> data(6, Sv(Eigen::Vector3d(2, 2, 2)));
  const TvFitResult r = fit(data, m, {});
  EXPECT_EQ(r.model.ivector_dim(), 1);
  EXPECT_FALSE(r.warnings.empty());
  const std::vector<Supervector> at_mean(6, m);
  try {
    fit(at_mean, m, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
  }
}

TEST(Fit, EigenpairsMatchOracleOnRandomData) {
  std::mt19937_64 rng(16);
  const auto data = RandomSet(10, 6, rng, Scales(6));
  const Supervector m = Sv(Eigen::VectorXd::Zero(6));
  TvFitOptions opt;
  opt.ivector_dim = 3;
  const TvFitResult r = fit(data, m, opt);
  const oracle::EigenPairs ref = oracle::Jacobi(build_covariance(data, m));
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(r.model.eigenvalues(j), ref.values[j], 1e-7);
    EXPECT_LT(oracle::SignlessDistance(r.model.basis.col(j), ref.vectors[j]), 1e-6);
  }
}

TEST(Fit, CapsDimensionAtNMinusOne) {
  std::mt19937_64 rng(17);
  const auto data = RandomSet(10, 312, rng, Eigen::VectorXd::Ones(312));
  const TvFitResult r = fit(data, Sv(Eigen::VectorXd::Zero(312)), {});
  EXPECT_EQ(r.requested_dim, 400);
  EXPECT_EQ(r.model.ivector_dim(), 9);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings.front().find("400"), std::string::npos);
}

TEST(Fit, GramRouteMatchesCovarianceRoute) {
  std::mt19937_64 rng(18);
  const int d = 40, n = 12;
  const auto data = RandomSet(n, d, rng, Eigen::VectorXd::LinSpaced(d, 4.0, 0.2));
  const Supervector m = Sv(Eigen::VectorXd::Constant(d, 0.1));
  TvFitOptions opt;
  opt.ivector_dim = n - 1;
  opt.whiten = false;
  const TvFitResult r = fit(data, m, opt);  // d > n: dual route
  const SymmetricEigen direct = symmetric_eigen(build_covariance(data, m));
  ASSERT_EQ(r.model.ivector_dim(), n - 1);
  for (int j = 0; j < n - 1; ++j) {
    EXPECT_NEAR(r.model.eigenvalues(j), direct.values(j), 1e-10 * direct.values(0));
    EXPECT_LT((r.model.basis.col(j) - direct.vectors.col(j)).cwiseAbs().maxCoeff(), 1e-6)
        << "column " << j;
  }
  const Eigen::MatrixXd gram = r.model.basis.transpose() * r.model.basis;
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ExtractIvector, ZeroOffsetAndBasisColumns) {
  std::mt19937_64 rng(19);
  const auto data = RandomSet(9, 6, rng, Scales(6));
  const Supervector m = Sv(Eigen::VectorXd::Constant(6, 0.2));
  TvFitOptions opt;
  opt.ivector_dim = 4;
  opt.whiten = false;
  const TvFitResult r = fit(data, m, opt);
  EXPECT_TRUE(extract_ivector(m, r.model).values.isZero());
  for (int j = 0; j < 4; ++j) {
    const IVector w = extract_ivector(Sv(m.values + r.model.basis.col(j)), r.model);
    EXPECT_LT((w.values - Eigen::VectorXd::Unit(4, j)).cwiseAbs().maxCoeff(), 1e-12);
  }
  try {
    extract_ivector(Sv(Eigen::VectorXd::Zero(5)), r.model);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(TotalVariability, Invariants) {
  std::mt19937_64 rng(20);
  const int d = 8;
  const auto data = RandomSet(14, d, rng, Scales(d));
  const Supervector m = Sv(Eigen::VectorXd::Constant(d, -0.1));

  double previous = std::numeric_limits<double>::infinity();
  for (int c = 1; c <= d; ++c) {
    TvFitOptions opt;
    opt.ivector_dim = c;
    opt.whiten = false;
    const TvFitResult r = fit(data, m, opt);
    const Eigen::MatrixXd gram = r.model.basis.transpose() * r.model.basis;
    EXPECT_LT((gram - Eigen::MatrixXd::Identity(c, c)).cwiseAbs().maxCoeff(), 1e-8);
    double err = 0.0;
    for (const auto& s : data) {
      const Eigen::VectorXd off = s.values - m.values;
      err += (off - r.model.basis * extract_ivector(s, r.model).values).squaredNorm();
    }
    EXPECT_LE(err, previous + 1e-12);
    previous = err;
  }

  TvFitOptions opt;
  opt.ivector_dim = 5;
  const TvFitResult white = fit(data, m, opt);
  Eigen::VectorXd mean_square = Eigen::VectorXd::Zero(5);
  for (const auto& s : data) mean_square += extract_ivector(s, white.model).values.cwiseAbs2();
  mean_square /= static_cast<double>(data.size());
  EXPECT_LT((mean_square.array() - 1.0).abs().maxCoeff(), 1e-6);

  opt.whiten = false;
  const TvFitResult plain = fit(data, m, opt);
  const IVector w1 = extract_ivector(data[0], plain.model);
  const IVector w2 = extract_ivector(data[1], plain.model);
  const Eigen::VectorXd direct =
      plain.model.basis.transpose() * (data[0].values - data[1].values);
  EXPECT_LT((w1.values - w2.values - direct).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace ivsid
