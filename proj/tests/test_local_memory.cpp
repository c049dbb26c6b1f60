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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gkv/errors.hpp"
#include "gkv/local_memory.hpp"
#include "gkv/rng.hpp"

using gkv::LocalKVMemory;
using gkv::Matrix;
using gkv::Precision;
using gkv::Sharpening;
using gkv::SupportSet;
using gkv::Vector;

namespace {

SupportSet make_support(int d, int m, int n, const Matrix &vectors) {
  SupportSet s;
  s.d = d;
  s.m = m;
  s.n = n;
  s.vectors = vectors;
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < n; ++k)
      s.class_index.push_back(j + 1);
  return s;
}

// Random unit-vector episode for property tests.
SupportSet random_support(int d, int m, int n, gkv::Rng &rng) {
  Matrix vectors(d, m * n);
  for (int i = 0; i < m * n; ++i) {
    for (int k = 0; k < d; ++k)
      vectors(k, i) = rng.normal();
    vectors.col(i).normalize();
  }
  return make_support(d, m, n, vectors);
}

Vector random_unit(int d, gkv::Rng &rng) {
  Vector v(d);
  for (int k = 0; k < d; ++k)
    v[k] = rng.normal();
  v.normalize();
  return v;
}

} // namespace

TEST_CASE("quantize maps") {
  Vector v(3);
  v << 0.5, -0.2, 0.0;
  const Vector bipolar = gkv::quantize(v, Precision::Bipolar);
  CHECK(bipolar[0] == 1.0);
  CHECK(bipolar[1] == -1.0);
  CHECK(bipolar[2] == 1.0); // sign(0) = +1
  const Vector binary = gkv::quantize(v, Precision::Binary);
  CHECK(binary[0] == 1.0);
  CHECK(binary[1] == 0.0);
  CHECK(binary[2] == 1.0);
  CHECK(gkv::quantize(v, Precision::Real) == v);

  Vector bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(gkv::quantize(bad, Precision::Bipolar),
                  gkv::ValidationError);
}

TEST_CASE("build_local lays out keys and one-hot values") {
  Matrix vectors(2, 2);
  vectors << 1, 0, 0, 1;
  const auto support = make_support(2, 2, 1, vectors);
  const auto memory = gkv::build_local(support, Precision::Real);
  CHECK(memory.keys == vectors);
  CHECK(memory.values == Matrix::Identity(2, 2));
  CHECK(memory.class_index == std::vector<int>{1, 2});
}

TEST_CASE("build_local quantizes keys per precision") {
  Matrix vectors(2, 2);
  Vector a(2);
  a << 0.5, -0.2;
  a.normalize();
  Vector b(2);
  b << -0.3, 0.9;
  b.normalize();
  vectors.col(0) = a;
  vectors.col(1) = b;
  const auto support = make_support(2, 2, 1, vectors);
  const auto memory = gkv::build_local(support, Precision::Bipolar);
  CHECK(memory.keys(0, 0) == 1.0);
  CHECK(memory.keys(1, 0) == -1.0);
  CHECK(memory.keys(0, 1) == -1.0);
  CHECK(memory.keys(1, 1) == 1.0);
}

TEST_CASE("build_local rejects an empty or inconsistent support set") {
  SupportSet empty;
  CHECK_THROWS_AS(gkv::build_local(empty, Precision::Real),
                  gkv::ValidationError);

  Matrix vectors(2, 2);
  vectors << 1, 0, 0, 1;
  auto bad_labels = make_support(2, 2, 1, vectors);
  bad_labels.class_index = {1, 3}; // outside 1..m
  CHECK_THROWS_AS(gkv::build_local(bad_labels, Precision::Real),
                  gkv::ValidationError);

  auto not_unit = make_support(2, 2, 1, 2.0 * Matrix::Identity(2, 2));
  CHECK_THROWS_AS(gkv::build_local(not_unit, Precision::Real),
                  gkv::ValidationError);
}

TEST_CASE("similarities computes K^T q") {
  LocalKVMemory memory;
  memory.keys = Matrix::Identity(2, 2);
  memory.values = Matrix::Identity(2, 2);
  memory.class_index = {1, 2};
  Vector q(2);
  q << 1, 0;
  const Vector alpha = gkv::similarities(memory, q);
  CHECK(alpha[0] == 1.0);
  CHECK(alpha[1] == 0.0);

  memory.keys.resize(2, 2);
  memory.keys << 1, 1, 1, -1; // columns (1,1) and (1,-1)
  Vector q2(2);
  q2 << 1, 1;
  const Vector alpha2 = gkv::similarities(memory, q2);
  CHECK(alpha2[0] == 2.0);
  CHECK(alpha2[1] == 0.0);

  Vector wrong(3);
  wrong << 1, 2, 3;
  CHECK_THROWS_AS(gkv::similarities(memory, wrong), gkv::DimensionError);
}

TEST_CASE("sharpen identity and softmax") {
  Vector alpha(2);
  alpha << 1, 0;
  CHECK(gkv::sharpen(alpha, Sharpening::identity()) == alpha);

  Vector even(2);
  even << 0, 0;
  const Vector soft = gkv::sharpen(even, Sharpening::softmax(1.0));
  CHECK(soft[0] == doctest::Approx(0.5));
  CHECK(soft[1] == doctest::Approx(0.5));

  // Direct evaluation oracle for a non-trivial case.
  Vector a(3);
  a << 1, 1, -1;
  const double t = 0.5;
  const Vector s = gkv::sharpen(a, Sharpening::softmax(t));
  double denom = 0.0;
  for (int i = 0; i < 3; ++i)
    denom += std::exp(a[i] / t);
  for (int i = 0; i < 3; ++i)
    CHECK(s[i] == doctest::Approx(std::exp(a[i] / t) / denom).epsilon(1e-12));
  CHECK(std::abs(s.sum() - 1.0) < 1e-12);

  CHECK_THROWS_AS(gkv::sharpen(a, Sharpening::softmax(0.0)),
                  gkv::ParameterError);
  CHECK_THROWS_AS(gkv::sharpen(a, Sharpening::softmax(-1.0)),
                  gkv::ParameterError);
}

TEST_CASE("class_scores accumulates and breaks ties low") {
  LocalKVMemory memory;
  memory.keys = Matrix::Identity(2, 2);
  memory.values = Matrix::Identity(2, 2);
  memory.class_index = {1, 2};

  Vector gamma(2);
  gamma << 1, 0;
  auto scores = gkv::class_scores(memory, gamma);
  CHECK(scores.scores[0] == 1.0);
  CHECK(scores.scores[1] == 0.0);
  CHECK(scores.predicted == 1);

  gamma << 0.4, 0.4;
  CHECK(gkv::class_scores(memory, gamma).predicted == 1); // tie -> lowest

  // m=3, n=2 hand-summed example.
  LocalKVMemory wide;
  wide.keys = Matrix::Identity(6, 6);
  wide.class_index = {1, 1, 2, 2, 3, 3};
  wide.values = Matrix::Zero(3, 6);
  for (int i = 0; i < 6; ++i)
    wide.values(wide.class_index[static_cast<std::size_t>(i)] - 1, i) = 1.0;
  Vector g(6);
  g << 1, 2, 0, 5, 1, 0;
  auto s = gkv::class_scores(wide, g);
  CHECK(s.scores[0] == 3.0);
  CHECK(s.scores[1] == 5.0);
  CHECK(s.scores[2] == 1.0);
  CHECK(s.predicted == 2);

  Vector wrong(3);
  CHECK_THROWS_AS(gkv::class_scores(memory, wrong), gkv::DimensionError);
}

TEST_CASE("knn oracle equals the pipeline") {
  gkv::Rng rng(1234);
  for (int episode = 0; episode < 200; ++episode) {
    const int d = 2 + static_cast<int>(rng.uniform_index(63));
    const int m = 1 + static_cast<int>(rng.uniform_index(10));
    const int n = 1 + static_cast<int>(rng.uniform_index(5));
    const auto support = random_support(d, m, n, rng);
    const auto memory = gkv::build_local(support, Precision::Real);
    const Vector q = random_unit(d, rng);

    const Sharpening fn = episode % 3 == 0 ? Sharpening::softmax(0.7)
                                           : Sharpening::identity();
    const auto pipeline =
        gkv::class_scores(memory, gkv::sharpen(gkv::similarities(memory, q),
                                               fn));
    const auto oracle = gkv::knn_oracle(support, q, fn);
    CHECK(pipeline.predicted == oracle.predicted);
    CHECK((pipeline.scores - oracle.scores).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("knn oracle single-class episode always predicts 1") {
  gkv::Rng rng(5);
  const auto support = random_support(8, 1, 3, rng);
  const Vector q = random_unit(8, rng);
  CHECK(gkv::knn_oracle(support, q, Sharpening::identity()).predicted == 1);
}

TEST_CASE("prediction is scale-equivariant under identity sharpening") {
  gkv::Rng rng(77);
  const auto support = random_support(16, 6, 2, rng);
  const auto memory = gkv::build_local(support, Precision::Real);
  const Vector q = random_unit(16, rng);
  const auto base =
      gkv::class_scores(memory, gkv::similarities(memory, q));
  for (double lambda : {0.25, 3.0, 1e3}) {
    const auto scaled =
        gkv::class_scores(memory, gkv::similarities(memory, lambda * q));
    CHECK(scaled.predicted == base.predicted);
    CHECK((scaled.scores - lambda * base.scores).cwiseAbs().maxCoeff() <
          1e-9 * lambda);
  }
}

TEST_CASE("scores are invariant under support permutation") {
  gkv::Rng rng(99);
  const auto support = random_support(12, 4, 3, rng);
  const Vector q = random_unit(12, rng);

  std::vector<int> perm(static_cast<std::size_t>(support.count()));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.uniform_index(i)]);

  SupportSet shuffled = support;
  for (int i = 0; i < support.count(); ++i) {
    shuffled.vectors.col(i) =
        support.vectors.col(perm[static_cast<std::size_t>(i)]);
    shuffled.class_index[static_cast<std::size_t>(i)] =
        support.class_index[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  }

  const auto a = gkv::class_scores(
      gkv::build_local(support, Precision::Real),
      gkv::similarities(gkv::build_local(support, Precision::Real), q));
  const auto b = gkv::class_scores(
      gkv::build_local(shuffled, Precision::Real),
      gkv::similarities(gkv::build_local(shuffled, Precision::Real), q));
  CHECK((a.scores - b.scores).cwiseAbs().maxCoeff() < 1e-12);
}
