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

#ifndef GKV_LOCAL_MEMORY_HPP
#define GKV_LOCAL_MEMORY_HPP

#include <vector>

#include "gkv/quantize.hpp"
#include "gkv/support_set.hpp"
#include "gkv/types.hpp"

namespace gkv {

/// Original key-value memory: one key column per support vector, one-hot
/// value columns. Immutable after build; all operations are pure.
struct LocalKVMemory {
  Matrix keys;                  // d x (m*n), column i is support vector i
  Matrix values;                // m x (m*n), column i is e_{c(i)}
  std::vector<int> class_index; // 1-based, size m*n
  Precision precision = Precision::Real;

  int d() const { return static_cast<int>(keys.rows()); }
  int m() const { return static_cast<int>(values.rows()); }
  int count() const { return static_cast<int>(keys.cols()); }
};

/// Sharpening applied to the similarity vector before class accumulation.
struct Sharpening {
  enum class Kind { Identity, Softmax };
  Kind kind = Kind::Identity;
  double temperature = 1.0; // Softmax only; must be > 0

  static Sharpening identity() { return {}; }
  static Sharpening softmax(double temperature) {
    return {Kind::Softmax, temperature};
  }
};

/// Stores a support set as a local KV memory, quantizing the keys to the
/// requested precision. Throws ValidationError on an empty or inconsistent
/// support set.
LocalKVMemory build_local(const SupportSet &support, Precision precision);

/// alpha = K^T q: dot-product similarity of the query against every stored
/// key. Throws DimensionError on length mismatch.
Vector similarities(const LocalKVMemory &memory, const Vector &query);

/// gamma = sigma(alpha). Identity leaves alpha untouched; Softmax(T)
/// computes exp(alpha_i/T) / sum_k exp(alpha_k/T). Throws ParameterError
/// for T <= 0 and ValidationError for non-finite input.
Vector sharpen(const Vector &alpha, const Sharpening &fn);

/// s = V gamma, the per-class sum of sharpened similarities, plus the
/// argmax prediction (lowest-index tie-break).
ClassScores class_scores(const LocalKVMemory &memory, const Vector &gamma);

/// Distance-weighted k-nearest-neighbor vote with k = mn, computed by
/// explicit per-sample iteration. Independent oracle for the
/// similarities -> sharpen -> class_scores pipeline.
ClassScores knn_oracle(const SupportSet &support, const Vector &query,
                       const Sharpening &fn);

} // namespace gkv

#endif // GKV_LOCAL_MEMORY_HPP
