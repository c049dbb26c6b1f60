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

#include <doctest.h>

#include "gkv/errors.hpp"
#include "gkv/grid.hpp"

TEST_CASE("comma lists and single values") {
  CHECK(gkv::parse_grid("50,100,150") ==
        std::vector<double>{50.0, 100.0, 150.0});
  CHECK(gkv::parse_grid("42") == std::vector<double>{42.0});
  CHECK(gkv::parse_grid("-10") == std::vector<double>{-10.0});
  CHECK(gkv::parse_int_grid("50,100") == std::vector<int>{50, 100});
}

TEST_CASE("inclusive ranges") {
  const auto variation = gkv::parse_grid("0:0.2:2.0");
  REQUIRE(variation.size() == 11);
  CHECK(variation.front() == 0.0);
  CHECK(variation.back() == doctest::Approx(2.0));

  const auto snr = gkv::parse_grid("-20:2:20");
  REQUIRE(snr.size() == 21);
  CHECK(snr.front() == -20.0);
  CHECK(snr.back() == doctest::Approx(20.0));

  CHECK(gkv::parse_int_grid("1:1:5") == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("malformed grids raise parse errors") {
  CHECK_THROWS_AS(gkv::parse_grid(""), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_grid("abc"), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_grid("1,,2"), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_grid("1,2,"), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_grid("1:2"), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_grid("1:0:5"), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_grid("1:-1:5"), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_grid("5:1:1"), gkv::ParseError);
  CHECK_THROWS_AS(gkv::parse_int_grid("1.5"), gkv::ParseError);
}
