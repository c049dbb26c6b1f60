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

#include <cmath>
#include <sstream>
#include <vector>

#include "gkv/codebook.hpp"
#include "gkv/distributed_memory.hpp"
#include "gkv/errors.hpp"
#include "gkv/local_memory.hpp"
#include "gkv/rng.hpp"

using gkv::CodebookMode;
using gkv::DistributedKeyMemory;
using gkv::LabelCodebook;
using gkv::Matrix;
using gkv::Precision;
using gkv::SupportSet;
using gkv::Vector;

namespace {

LabelCodebook identity_codebook(int m) {
  LabelCodebook book;
  book.matrix = Matrix::Identity(m, m);
  return book;
}

SupportSet unit_support(int d, int m, int n, gkv::Rng &rng) {
  SupportSet s;
  s.d = d;
  s.m = m;
  s.n = n;
  s.vectors.resize(d, m * n);
  for (int i = 0; i < m * n; ++i) {
    for (int k = 0; k < d; ++k)
      s.vectors(k, i) = rng.normal();
    s.vectors.col(i).normalize();
    s.class_index.push_back(i / n + 1);
  }
  return s;
}

} // namespace

TEST_CASE("outer products with standard basis labels reproduce the keys") {
  SupportSet support;
  support.d = 2;
  support.m = 2;
  support.n = 1;
  support.vectors = Matrix::Identity(2, 2);
  support.class_index = {1, 2};
  const auto memory =
      gkv::build_distributed(support, identity_codebook(2));
  CHECK(memory.matrix == Matrix::Identity(2, 2));
  CHECK(memory.count == 2);
  CHECK(memory.precision == Precision::Real);
}

TEST_CASE("single-class superposition is L1 (K1 + K2)^T") {
  gkv::Rng rng(3);
  SupportSet support = unit_support(5, 1, 2, rng);
  LabelCodebook book;
  Vector label(4);
  label << 0.5, -0.5, 0.5, 0.5; // unit
  book.matrix = label;
  const auto memory = gkv::build_distributed(support, book);
  const Matrix expected =
      label * (support.vectors.col(0) + support.vectors.col(1)).transpose();
  CHECK((memory.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("superposition matches a brute-force triple loop") {
  gkv::Rng rng(17);
  const int r = 4;
  const int d = 3;
  const auto support = unit_support(d, 5, 1, rng); // mn = 5
  const auto book = gkv::make_codebook(r, 5, CodebookMode::Whitened, 8);
  const auto memory = gkv::build_distributed(support, book);

  Matrix expected = Matrix::Zero(r, d);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < support.count(); ++i)
        expected(k, l) +=
            book.matrix(k, support.class_index[static_cast<std::size_t>(i)] - 1) *
            support.vectors(l, i);
  CHECK((memory.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("incremental updates reproduce the batch build") {
  gkv::Rng rng(21);
  const auto support = unit_support(6, 3, 2, rng);
  const auto book = gkv::make_codebook(7, 3, CodebookMode::Orthogonal, 2);
  const auto batch = gkv::build_distributed(support, book);

  DistributedKeyMemory incremental;
  incremental.matrix = Matrix::Zero(7, 6);
  for (int i = 0; i < support.count(); ++i)
    gkv::update(incremental, book, support.vectors.col(i),
                support.class_index[static_cast<std::size_t>(i)]);
  CHECK((incremental.matrix - batch.matrix).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(incremental.count == batch.count);
}

TEST_CASE("one update produces a rank-1 memory") {
  gkv::Rng rng(4);
  const auto book = gkv::make_codebook(6, 2, CodebookMode::Orthogonal, 5);
  DistributedKeyMemory memory;
  memory.matrix = Matrix::Zero(6, 4);
  Vector v(4);
  v << 0.5, 0.5, 0.5, 0.5;
  gkv::update(memory, book, v, 2);
  const Eigen::JacobiSVD<Matrix> svd(memory.matrix);
  CHECK(svd.singularValues()[0] > 0.0);
  for (int i = 1; i < svd.singularValues().size(); ++i)
    CHECK(svd.singularValues()[i] < 1e-12);
}

TEST_CASE("update validates class labels and state") {
  const auto book = gkv::make_codebook(4, 3, CodebookMode::Orthogonal, 5);
  DistributedKeyMemory memory;
  memory.matrix = Matrix::Zero(4, 2);
  Vector v(2);
  v << 1, 0;
  CHECK_THROWS_AS(gkv::update(memory, book, v, 4), gkv::ValidationError);
  CHECK_THROWS_AS(gkv::update(memory, book, v, 0), gkv::ValidationError);

  gkv::update(memory, book, v, 1);
  auto frozen = gkv::bipolarize(memory, Precision::Bipolar);
  CHECK_THROWS_AS(gkv::update(frozen, book, v, 1), gkv::StateError);
  CHECK_THROWS_AS(gkv::bipolarize(frozen, Precision::Binary),
                  gkv::StateError);
}

TEST_CASE("bipolarize applies sign with sign(0) = +1") {
  DistributedKeyMemory memory;
  memory.matrix.resize(2, 2);
  memory.matrix << 0.3, -0.1, 0.0, 2.0;
  memory.count = 1;

  const auto bipolar = gkv::bipolarize(memory, Precision::Bipolar);
  Matrix expected_bipolar(2, 2);
  expected_bipolar << 1, -1, 1, 1;
  CHECK(bipolar.matrix == expected_bipolar);
  CHECK(bipolar.precision == Precision::Bipolar);
  CHECK(bipolar.count == 1);

  const auto binary = gkv::bipolarize(memory, Precision::Binary);
  Matrix expected_binary(2, 2);
  expected_binary << 1, 0, 1, 1;
  CHECK(binary.matrix == expected_binary);

  DistributedKeyMemory zeros;
  zeros.matrix = Matrix::Zero(3, 3);
  CHECK(gkv::bipolarize(zeros, Precision::Bipolar).matrix ==
        Matrix::Ones(3, 3));

  CHECK_THROWS_AS(gkv::bipolarize(memory, Precision::Real),
                  gkv::ParameterError);
}

TEST_CASE("infer on the identity example") {
  DistributedKeyMemory memory;
  memory.matrix = Matrix::Identity(2, 2);
  Vector q(2);
  q << 1, 0;
  const auto scores = gkv::infer_distributed(memory, identity_codebook(2), q);
  CHECK(scores.scores[0] == 1.0);
  CHECK(scores.scores[1] == 0.0);
  CHECK(scores.predicted == 1);

  const auto zero = gkv::infer_distributed(memory, identity_codebook(2),
                                           Vector::Zero(2));
  CHECK(zero.scores == Vector::Zero(2));
  CHECK(zero.predicted == 1); // tie rule

  Vector wrong(3);
  wrong << 1, 2, 3;
  CHECK_THROWS_AS(gkv::infer_distributed(memory, identity_codebook(2), wrong),
                  gkv::DimensionError);
}

TEST_CASE("orthonormal codebook at r = m reproduces the local pipeline") {
  gkv::Rng rng(2024);
  for (int episode = 0; episode < 100; ++episode) {
    const int d = 16;
    const int m = 5;
    const int n = 3;
    const auto support = unit_support(d, m, n, rng);
    const auto book = gkv::make_codebook(
        m, m, CodebookMode::Orthogonal,
        gkv::derive_seed(900, static_cast<std::uint64_t>(episode)));
    const auto distributed = gkv::build_distributed(support, book);
    const auto local = gkv::build_local(support, Precision::Real);

    Vector q(d);
    for (int k = 0; k < d; ++k)
      q[k] = rng.normal();
    q.normalize();

    const auto via_distributed = gkv::infer_distributed(distributed, book, q);
    const auto via_local = gkv::class_scores(
        local, gkv::sharpen(gkv::similarities(local, q),
                            gkv::Sharpening::identity()));
    CHECK(via_distributed.predicted == via_local.predicted);
    CHECK((via_distributed.scores - via_local.scores).cwiseAbs().maxCoeff() <
          1e-9);
  }
}

TEST_CASE("scores are invariant under codebook rotation") {
  gkv::Rng rng(31);
  const int r = 12;
  const int m = 4;
  const auto support = unit_support(10, m, 2, rng);
  const auto book = gkv::make_codebook(r, m, CodebookMode::Orthogonal, 6);
  // Any orthogonal r x r matrix; reuse the codebook generator at m = r.
  const Matrix rotation =
      gkv::make_codebook(r, r, CodebookMode::Orthogonal, 60).matrix;

  LabelCodebook rotated;
  rotated.matrix = rotation * book.matrix;

  const auto memory = gkv::build_distributed(support, book);
  const auto memory_rotated = gkv::build_distributed(support, rotated);

  Vector q(10);
  for (int k = 0; k < 10; ++k)
    q[k] = rng.normal();
  q.normalize();

  const auto a = gkv::infer_distributed(memory, book, q);
  const auto b = gkv::infer_distributed(memory_rotated, rotated, q);
  CHECK((a.scores - b.scores).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(a.predicted == b.predicted);
}

TEST_CASE("memory shape is decoupled from the number of stored vectors") {
  gkv::Rng rng(8);
  const int r = 16;
  const int d = 12;
  for (int mn : {10, 100, 500}) {
    const int n = mn / 5;
    const auto support = unit_support(d, 5, n, rng);
    const auto book = gkv::make_codebook(r, 5, CodebookMode::Orthogonal, 1);
    const auto memory = gkv::build_distributed(support, book);
    CHECK(memory.r() == r);
    CHECK(memory.d() == d);
    CHECK(memory.count == mn);
  }
}

TEST_CASE("quantized memories contain exactly the quantized alphabet") {
  gkv::Rng rng(44);
  const auto support = unit_support(9, 3, 4, rng);
  const auto book = gkv::make_codebook(8, 3, CodebookMode::Orthogonal, 3);
  const auto real = gkv::build_distributed(support, book);

  const auto bipolar = gkv::bipolarize(real, Precision::Bipolar);
  for (int j = 0; j < bipolar.matrix.cols(); ++j)
    for (int i = 0; i < bipolar.matrix.rows(); ++i)
      CHECK((bipolar.matrix(i, j) == 1.0 || bipolar.matrix(i, j) == -1.0));

  const auto binary = gkv::bipolarize(real, Precision::Binary);
  for (int j = 0; j < binary.matrix.cols(); ++j)
    for (int i = 0; i < binary.matrix.rows(); ++i)
      CHECK((binary.matrix(i, j) == 1.0 || binary.matrix(i, j) == 0.0));
}

TEST_CASE("memory CSV export carries shape and precision") {
  DistributedKeyMemory memory;
  memory.matrix.resize(2, 3);
  memory.matrix << 1, 2, 3, 4, 5, 6;
  std::stringstream out;
  gkv::export_memory_csv(memory, out);
  CHECK(out.str() == "r,d,precision\n2,3,real\n1,2,3\n4,5,6\n");
}
