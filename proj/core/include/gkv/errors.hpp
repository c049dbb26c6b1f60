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

#ifndef GKV_ERRORS_HPP
#define GKV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gkv {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Incompatible vector/matrix shapes.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Inputs violate a documented precondition (empty sets, bad labels, NaNs).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Scalar parameter outside its admissible range.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Operation not allowed in the object's current state (e.g. a quantized
/// memory is frozen for updates).
class StateError : public Error {
public:
  using Error::Error;
};

/// A sampling request exceeds what the data source can provide.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Malformed text input; the message names the offending row/key.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Filesystem failure (missing file, unwritable path).
class IoError : public Error {
public:
  using Error::Error;
};

/// A signal reference with zero power cannot calibrate a noise level.
class DegenerateSignalError : public Error {
public:
  using Error::Error;
};

} // namespace gkv

#endif // GKV_ERRORS_HPP
