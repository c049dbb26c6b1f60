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

#ifndef GKV_GRID_HPP
#define GKV_GRID_HPP

#include <string>
#include <vector>

namespace gkv {

/// Parses sweep-axis expressions from the command line.
///
///   "50,100,150"   explicit comma-separated list
///   "0:0.2:2.0"    inclusive range start:step:stop
///   "42"           single value
///
/// Throws ParseError on malformed input, zero/backwards steps, or (for the
/// integer form) non-integral values.
std::vector<double> parse_grid(const std::string &text);
std::vector<int> parse_int_grid(const std::string &text);

} // namespace gkv

#endif // GKV_GRID_HPP
