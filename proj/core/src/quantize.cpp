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

#include "gkv/quantize.hpp"

#include "gkv/errors.hpp"

namespace gkv {

namespace {

double bipolar_of(double x) { return sign_pos(x); }
double binary_of(double x) { return (sign_pos(x) + 1.0) / 2.0; }

} // namespace

Matrix quantize(const Matrix &m, Precision precision) {
  if (!m.allFinite())
    throw ValidationError("quantize: input contains a non-finite entry");
  switch (precision) {
  case Precision::Real:
    return m;
  case Precision::Bipolar:
    return m.unaryExpr(&bipolar_of);
  case Precision::Binary:
    return m.unaryExpr(&binary_of);
  }
  return m;
}

Vector quantize(const Vector &v, Precision precision) {
  if (!v.allFinite())
    throw ValidationError("quantize: input contains a non-finite entry");
  switch (precision) {
  case Precision::Real:
    return v;
  case Precision::Bipolar:
    return v.unaryExpr(&bipolar_of);
  case Precision::Binary:
    return v.unaryExpr(&binary_of);
  }
  return v;
}

} // namespace gkv
