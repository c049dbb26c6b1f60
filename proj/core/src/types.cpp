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

#include "gkv/types.hpp"

#include "gkv/errors.hpp"

namespace gkv {

std::string to_string(Precision p) {
  switch (p) {
  case Precision::Real:
    return "real";
  case Precision::Bipolar:
    return "bipolar";
  case Precision::Binary:
    return "binary";
  }
  return "real";
}

Precision precision_from_string(const std::string &name) {
  if (name == "real")
    return Precision::Real;
  if (name == "bipolar")
    return Precision::Bipolar;
  if (name == "binary")
    return Precision::Binary;
  throw ParseError("unknown precision '" + name +
                   "' (expected real, bipolar, or binary)");
}

int argmax_class(const Vector &scores) {
  if (scores.size() == 0)
    throw DimensionError("argmax of an empty score vector");
  int best = 0;
  for (int j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best])
      best = j;
  }
  return best + 1;
}

} // namespace gkv
