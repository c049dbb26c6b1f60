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

#include "gkv/support_set.hpp"

#include <cmath>
#include <string>

#include "gkv/errors.hpp"

namespace gkv {

void SupportSet::validate() const {
  if (m < 1 || n < 1 || d < 1)
    throw ValidationError("support set: m, n, d must all be positive");
  const int mn = m * n;
  if (vectors.rows() != d || vectors.cols() != mn ||
      static_cast<int>(class_index.size()) != mn)
    throw ValidationError("support set: inconsistent dimensions");

  std::vector<int> per_class(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < mn; ++i) {
    const int c = class_index[static_cast<std::size_t>(i)];
    if (c < 1 || c > m)
      throw ValidationError("support set: class index " + std::to_string(c) +
                            " outside 1.." + std::to_string(m));
    ++per_class[static_cast<std::size_t>(c - 1)];
  }
  for (int j = 0; j < m; ++j) {
    if (per_class[static_cast<std::size_t>(j)] != n)
      throw ValidationError("support set: class " + std::to_string(j + 1) +
                            " has " +
                            std::to_string(per_class[static_cast<std::size_t>(j)]) +
                            " samples, expected " + std::to_string(n));
  }
  for (int i = 0; i < mn; ++i) {
    if (std::abs(vectors.col(i).norm() - 1.0) > 1e-10)
      throw ValidationError("support set: vector " + std::to_string(i) +
                            " is not unit-normalized");
  }
}

} // namespace gkv
