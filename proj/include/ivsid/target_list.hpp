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

#include <span>
#include <string>
#include <vector>

#include "ivsid/scoring.hpp"

namespace ivsid {

/// Enrolled speakers in enrollment order. Ids are unique and every i-vector
/// has the same dimension.
class TargetList {
 public:
  /// Throws DuplicateTarget or DimensionMismatch.
  void add(std::string id, IVector ivector);

  bool contains(const std::string& id) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Eigen::Index ivector_dim() const {
    return entries_.empty() ? 0 : entries_.front().ivector.size();
  }
  std::span<const LabeledIVector> entries() const { return entries_; }

 private:
  std::vector<LabeledIVector> entries_;
};

}  // namespace ivsid
