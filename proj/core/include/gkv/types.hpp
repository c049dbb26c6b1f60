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

#ifndef GKV_TYPES_HPP
#define GKV_TYPES_HPP

#include <Eigen/Dense>
#include <string>

namespace gkv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Storage precision of a key memory. Real keeps the controller output as
/// is; Bipolar maps entries to {-1,+1}; Binary to {0,1}.
enum class Precision { Real, Bipolar, Binary };

std::string to_string(Precision p);
Precision precision_from_string(const std::string &name);

/// Per-class accumulated scores plus the argmax prediction (1-based).
struct ClassScores {
  Vector scores;
  int predicted = 0;
};

/// Argmax with ties broken towards the lowest class index. Returns a
/// 1-based class label.
int argmax_class(const Vector &scores);

} // namespace gkv

#endif // GKV_TYPES_HPP
