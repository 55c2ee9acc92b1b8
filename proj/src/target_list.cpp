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

#include "ivsid/target_list.hpp"

#include <algorithm>

namespace ivsid {

void TargetList::add(std::string id, IVector ivector) {
  if (contains(id)) {
    throw Error(ErrorCode::kDuplicateTarget, "target '" + id + "' is already enrolled");
  }
  if (!entries_.empty() && ivector.size() != ivector_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "i-vector for '" + id + "' has dimension " +
                    std::to_string(ivector.size()) + ", target list holds " +
                    std::to_string(ivector_dim()));
  }
  entries_.push_back({std::move(id), std::move(ivector)});
}

bool TargetList::contains(const std::string& id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const LabeledIVector& e) { return e.id == id; });
}

}  // namespace ivsid
