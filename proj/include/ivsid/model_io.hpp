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

#include <filesystem>
#include <iosfwd>

#include "ivsid/adaptation.hpp"
#include "ivsid/features.hpp"
#include "ivsid/gmm.hpp"
#include "ivsid/target_list.hpp"
#include "ivsid/total_variability.hpp"

// Little-endian binary containers. Each starts with a four-byte magic and a
// u32 version (currently 1):
//
//   IVFX  u32 rows, u32 cols, rows*cols f64 row-major
//   IVGM  u32 L, u32 F, weights[L], means[L*F], variances[L*F]
//   IVSV  u32 F, u32 L, values[F*L]
//   IVTV  u32 D, u32 c, u8 whiten, mean[D], eigenvalues[c], basis[D*c]
//         column-major
//   IVTL  u32 count, then per entry: u16 id_len, id bytes (UTF-8), u32 c,
//         values[c]
//
// Writers go through a temporary file and rename, so readers never observe
// a partially written file.

namespace ivsid {

inline constexpr std::uint32_t kFormatVersion = 1;

void write_features(const std::filesystem::path& path, const FeatureMatrix& features);
FeatureMatrix read_features(const std::filesystem::path& path);

/// One row per frame, 17 significant digits.
void write_features_csv(std::ostream& out, const FeatureMatrix& features);

void write_gmm(const std::filesystem::path& path, const GmmModel& model);
GmmModel read_gmm(const std::filesystem::path& path);

void write_supervector(const std::filesystem::path& path, const Supervector& sv);
Supervector read_supervector(const std::filesystem::path& path);

void write_tv_model(const std::filesystem::path& path,
                    const TotalVariabilityModel& model);
TotalVariabilityModel read_tv_model(const std::filesystem::path& path);

void write_target_list(const std::filesystem::path& path, const TargetList& targets);
TargetList read_target_list(const std::filesystem::path& path);

}  // namespace ivsid
