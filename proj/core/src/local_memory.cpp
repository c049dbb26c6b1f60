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

#include "gkv/local_memory.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gkv/errors.hpp"

namespace gkv {

LocalKVMemory build_local(const SupportSet &support, Precision precision) {
  support.validate();

  LocalKVMemory memory;
  memory.keys = quantize(support.vectors, precision);
  memory.class_index = support.class_index;
  memory.precision = precision;

  const int mn = support.count();
  memory.values = Matrix::Zero(support.m, mn);
  for (int i = 0; i < mn; ++i)
    memory.values(support.class_index[static_cast<std::size_t>(i)] - 1, i) =
        1.0;
  return memory;
}

Vector similarities(const LocalKVMemory &memory, const Vector &query) {
  if (query.size() != memory.keys.rows())
    throw DimensionError("similarities: query length " +
                         std::to_string(query.size()) + " != key dimension " +
                         std::to_string(memory.keys.rows()));
  return memory.keys.transpose() * query;
}

Vector sharpen(const Vector &alpha, const Sharpening &fn) {
  if (!alpha.allFinite())
    throw ValidationError("sharpen: non-finite similarity entry");
  switch (fn.kind) {
  case Sharpening::Kind::Identity:
    return alpha;
  case Sharpening::Kind::Softmax: {
    if (!(fn.temperature > 0.0))
      throw ParameterError("softmax temperature must be > 0");
    const Vector scaled = alpha / fn.temperature;
    const double peak = scaled.maxCoeff();
    Vector e = (scaled.array() - peak).exp();
    return e / e.sum();
  }
  }
  return alpha;
}

ClassScores class_scores(const LocalKVMemory &memory, const Vector &gamma) {
  if (gamma.size() != memory.values.cols())
    throw DimensionError("class_scores: gamma length " +
                         std::to_string(gamma.size()) +
                         " != stored vector count " +
                         std::to_string(memory.values.cols()));
  ClassScores result;
  result.scores = memory.values * gamma;
  result.predicted = argmax_class(result.scores);
  return result;
}

ClassScores knn_oracle(const SupportSet &support, const Vector &query,
                       const Sharpening &fn) {
  support.validate();
  if (query.size() != support.d)
    throw DimensionError("knn_oracle: query length mismatch");

  const int mn = support.count();

  // Per-neighbor similarity, entry by entry.
  std::vector<double> weight(static_cast<std::size_t>(mn), 0.0);
  for (int i = 0; i < mn; ++i) {
    double dot = 0.0;
    for (int k = 0; k < support.d; ++k)
      dot += support.vectors(k, i) * query[k];
    weight[static_cast<std::size_t>(i)] = dot;
  }

  if (fn.kind == Sharpening::Kind::Softmax) {
    if (!(fn.temperature > 0.0))
      throw ParameterError("softmax temperature must be > 0");
    double peak = weight[0] / fn.temperature;
    for (int i = 1; i < mn; ++i)
      peak = std::max(peak, weight[static_cast<std::size_t>(i)] /
                                fn.temperature);
    double total = 0.0;
    for (int i = 0; i < mn; ++i) {
      auto &w = weight[static_cast<std::size_t>(i)];
      w = std::exp(w / fn.temperature - peak);
      total += w;
    }
    for (int i = 0; i < mn; ++i)
      weight[static_cast<std::size_t>(i)] /= total;
  }

  // Distance-weighted vote with k = mn: every neighbor contributes its
  // weight to its class.
  ClassScores result;
  result.scores = Vector::Zero(support.m);
  for (int i = 0; i < mn; ++i)
    result.scores[support.class_index[static_cast<std::size_t>(i)] - 1] +=
        weight[static_cast<std::size_t>(i)];
  result.predicted = argmax_class(result.scores);
  return result;
}

} // namespace gkv
