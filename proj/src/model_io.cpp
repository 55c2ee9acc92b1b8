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

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace ivsid {
namespace {

class ByteWriter {
 public:
  explicit ByteWriter(const char* magic) { bytes_.insert(bytes_.end(), magic, magic + 4); }

  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }

  template <typename Derived>
  void f64s(const Eigen::DenseBase<Derived>& values) {
    // Storage order of the argument defines the on-disk order.
    for (Eigen::Index i = 0; i < values.size(); ++i) f64(values.derived().data()[i]);
  }

  void bytes(const std::string& s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }

  void commit(const std::filesystem::path& path) const {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(reinterpret_cast<const char*>(bytes_.data()),
                static_cast<std::streamsize>(bytes_.size()));
      if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
      throw Error(ErrorCode::kIoFailure,
                  "cannot rename " + tmp.string() + ": " + ec.message());
    }
  }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) {
      bytes_.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
    }
  }
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  ByteReader(const std::filesystem::path& path, const char* magic) : where_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + where_);
    bytes_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    if (bytes_.size() < 8 || std::memcmp(bytes_.data(), magic, 4) != 0) {
      throw Error(ErrorCode::kCorruptFile,
                  where_ + ": expected magic " + std::string(magic, 4));
    }
    pos_ = 4;
    const std::uint32_t version = u32();
    if (version != kFormatVersion) {
      throw Error(ErrorCode::kUnsupportedFormat,
                  where_ + ": version=" + std::to_string(version));
    }
  }

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  double f64() { return std::bit_cast<double>(get(8)); }

  template <typename Derived>
  void f64s(Eigen::DenseBase<Derived>& values) {
    need(8 * static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i) values.derived().data()[i] = f64();
  }

  std::string text(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  void finish() const {
    if (pos_ != bytes_.size()) {
      throw Error(ErrorCode::kCorruptFile,
                  where_ + ": " + std::to_string(bytes_.size() - pos_) +
                      " trailing bytes");
    }
  }

  const std::string& where() const { return where_; }

  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::kCorruptFile, where_ + ": truncated");
    }
  }

 private:
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::string where_;
  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t Checked32(Eigen::Index n, const char* what) {
  if (n < 0 || n > static_cast<Eigen::Index>(std::numeric_limits<std::uint32_t>::max())) {
    throw Error(ErrorCode::kInvalidConfig, std::string(what) + " does not fit in u32");
  }
  return static_cast<std::uint32_t>(n);
}

}  // namespace

void write_features(const std::filesystem::path& path, const FeatureMatrix& features) {
  ByteWriter w("IVFX");
  w.u32(kFormatVersion);
  w.u32(Checked32(features.values.rows(), "rows"));
  w.u32(Checked32(features.values.cols(), "cols"));
  w.f64s(features.values);
  w.commit(path);
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  ByteReader r(path, "IVFX");
  const std::uint32_t rows = r.u32();
  const std::uint32_t cols = r.u32();
  r.need(8 * static_cast<std::size_t>(rows) * cols);
  FeatureMatrix features;
  features.values.resize(rows, cols);
  r.f64s(features.values);
  r.finish();
  return features;
}

void write_features_csv(std::ostream& out, const FeatureMatrix& features) {
  char buf[32];
  for (Eigen::Index t = 0; t < features.values.rows(); ++t) {
    for (Eigen::Index d = 0; d < features.values.cols(); ++d) {
      std::snprintf(buf, sizeof(buf), "%.17g", features.values(t, d));
      if (d > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_gmm(const std::filesystem::path& path, const GmmModel& model) {
  ByteWriter w("IVGM");
  w.u32(kFormatVersion);
  w.u32(Checked32(model.num_components(), "components"));
  w.u32(Checked32(model.dim(), "dimension"));
  w.f64s(model.weights);
  w.f64s(model.means);
  w.f64s(model.variances);
  w.commit(path);
}

GmmModel read_gmm(const std::filesystem::path& path) {
  ByteReader r(path, "IVGM");
  const std::uint32_t l = r.u32();
  const std::uint32_t f = r.u32();
  r.need(8 * (static_cast<std::size_t>(l) + 2 * static_cast<std::size_t>(l) * f));
  GmmModel model;
  model.weights.resize(l);
  model.means.resize(l, f);
  model.variances.resize(l, f);
  r.f64s(model.weights);
  r.f64s(model.means);
  r.f64s(model.variances);
  r.finish();
  try {
    model.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptFile, r.where() + ": " + e.what());
  }
  return model;
}

void write_supervector(const std::filesystem::path& path, const Supervector& sv) {
  ByteWriter w("IVSV");
  w.u32(kFormatVersion);
  w.u32(Checked32(sv.feature_dim, "feature dim"));
  w.u32(Checked32(sv.components, "components"));
  w.f64s(sv.values);
  w.commit(path);
}

Supervector read_supervector(const std::filesystem::path& path) {
  ByteReader r(path, "IVSV");
  Supervector sv;
  sv.feature_dim = r.u32();
  sv.components = r.u32();
  r.need(8 * static_cast<std::size_t>(sv.feature_dim * sv.components));
  sv.values.resize(sv.feature_dim * sv.components);
  r.f64s(sv.values);
  r.finish();
  return sv;
}

void write_tv_model(const std::filesystem::path& path,
                    const TotalVariabilityModel& model) {
  ByteWriter w("IVTV");
  w.u32(kFormatVersion);
  w.u32(Checked32(model.supervector_dim(), "supervector dim"));
  w.u32(Checked32(model.ivector_dim(), "i-vector dim"));
  w.u8(model.whiten ? 1 : 0);
  w.f64s(model.mean);
  w.f64s(model.eigenvalues);
  w.f64s(model.basis);  // Eigen::MatrixXd is column-major
  w.commit(path);
}

TotalVariabilityModel read_tv_model(const std::filesystem::path& path) {
  ByteReader r(path, "IVTV");
  const std::uint32_t d = r.u32();
  const std::uint32_t c = r.u32();
  const std::uint8_t whiten = r.u8();
  if (whiten > 1) {
    throw Error(ErrorCode::kCorruptFile, r.where() + ": whiten flag must be 0 or 1");
  }
  r.need(8 * (static_cast<std::size_t>(d) + c + static_cast<std::size_t>(d) * c));
  TotalVariabilityModel model;
  model.whiten = whiten == 1;
  model.mean.resize(d);
  model.eigenvalues.resize(c);
  model.basis.resize(d, c);
  r.f64s(model.mean);
  r.f64s(model.eigenvalues);
  r.f64s(model.basis);
  r.finish();
  return model;
}

void write_target_list(const std::filesystem::path& path, const TargetList& targets) {
  ByteWriter w("IVTL");
  w.u32(kFormatVersion);
  w.u32(Checked32(static_cast<Eigen::Index>(targets.size()), "target count"));
  for (const auto& entry : targets.entries()) {
    if (entry.id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::kInvalidConfig, "target id longer than 65535 bytes");
    }
    w.u16(static_cast<std::uint16_t>(entry.id.size()));
    w.bytes(entry.id);
    w.u32(Checked32(entry.ivector.size(), "i-vector dim"));
    w.f64s(entry.ivector.values);
  }
  w.commit(path);
}

TargetList read_target_list(const std::filesystem::path& path) {
  ByteReader r(path, "IVTL");
  const std::uint32_t count = r.u32();
  TargetList targets;
  for (std::uint32_t k = 0; k < count; ++k) {
    std::string id = r.text(r.u16());
    const std::uint32_t dim = r.u32();
    r.need(8 * static_cast<std::size_t>(dim));
    IVector ivec;
    ivec.values.resize(dim);
    r.f64s(ivec.values);
    try {
      targets.add(std::move(id), std::move(ivec));
    } catch (const Error& e) {
      throw Error(ErrorCode::kCorruptFile, r.where() + ": " + e.what());
    }
  }
  r.finish();
  return targets;
}

}  // namespace ivsid
