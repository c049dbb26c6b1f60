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

#ifndef GKV_QUANTIZE_HPP
#define GKV_QUANTIZE_HPP

#include "gkv/types.hpp"

namespace gkv {

/// sign with sign(0) = +1, so quantization is total and deterministic.
inline double sign_pos(double x) { return x < 0.0 ? -1.0 : 1.0; }

/// Quantizes a vector to the requested precision.
/// Real is the identity; Bipolar maps each entry to sign(x) with
/// sign(0) = +1; Binary is the {0,1} image of the bipolar map.
/// Throws ValidationError on non-finite entries.
Vector quantize(const Vector &v, Precision precision);

/// Same map applied entrywise to a matrix (each column a vector).
Matrix quantize(const Matrix &m, Precision precision);

} // namespace gkv

#endif // GKV_QUANTIZE_HPP
