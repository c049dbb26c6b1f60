// Copyright 2026 The gkv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GKV_SUPPORT_SET_HPP
#define GKV_SUPPORT_SET_HPP

#include <vector>

#include "gkv/types.hpp"

namespace gkv {

/// Support vectors of one m-way n-shot problem. Column i of `vectors` is
/// the d-dimensional embedding K_i of the i-th training sample and
/// `class_index[i]` its 1-based class label. Vectors are unit-normalized,
/// exactly n per class, in class-major column order.
struct SupportSet {
  int d = 0;
  int m = 0;
  int n = 0;
  Matrix vectors;               // d x (m*n)
  std::vector<int> class_index; // size m*n, values in 1..m

  int count() const { return static_cast<int>(class_index.size()); }

  /// Checks the structural invariants; throws ValidationError.
  void validate() const;
};

/// Query vectors with ground-truth labels, disjoint from the supports.
struct QuerySet {
  Matrix queries;              // d x count
  std::vector<int> true_class; // 1-based

  int count() const { return static_cast<int>(true_class.size()); }
};

} // namespace gkv

#endif // GKV_SUPPORT_SET_HPP
