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

#include "gkv/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gkv/errors.hpp"

namespace gkv {

namespace {

double parse_number(const std::string &token, const std::string &full) {
  if (token.empty())
    throw ParseError("empty value in grid expression '" + full + "'");
  char *end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size())
    throw ParseError("non-numeric value '" + token + "' in grid expression '" +
                     full + "'");
  return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, sep))
    out.push_back(token);
  if (!text.empty() && text.back() == sep)
    out.emplace_back();
  return out;
}

} // namespace

std::vector<double> parse_grid(const std::string &text) {
  if (text.empty())
    throw ParseError("empty grid expression");

  // start:step:stop — but a lone negative number also contains no ':'.
  const auto colon_parts = split(text, ':');
  if (colon_parts.size() == 3) {
    const double start = parse_number(colon_parts[0], text);
    const double step = parse_number(colon_parts[1], text);
    const double stop = parse_number(colon_parts[2], text);
    if (step <= 0.0)
      throw ParseError("grid step must be positive in '" + text + "'");
    if (stop < start)
      throw ParseError("grid stop precedes start in '" + text + "'");
    std::vector<double> values;
    // inclusive stop, with slack for accumulated rounding
    const double limit = stop + step * 1e-9;
    for (int k = 0;; ++k) {
      const double v = start + step * k;
      if (v > limit)
        break;
      values.push_back(v);
    }
    return values;
  }
  if (colon_parts.size() != 1)
    throw ParseError("expected value, list, or start:step:stop in '" + text +
                     "'");

  std::vector<double> values;
  for (const auto &token : split(text, ','))
    values.push_back(parse_number(token, text));
  return values;
}

std::vector<int> parse_int_grid(const std::string &text) {
  std::vector<int> out;
  for (double v : parse_grid(text)) {
    const double rounded = std::round(v);
    if (std::abs(v - rounded) > 1e-9)
      throw ParseError("expected integral values in '" + text + "'");
    out.push_back(static_cast<int>(rounded));
  }
  return out;
}

} // namespace gkv
