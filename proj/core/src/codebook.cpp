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

#include "gkv/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gkv/errors.hpp"
#include "gkv/format.hpp"
#include "gkv/rng.hpp"

namespace gkv {

namespace {

// Column-major fill, so the draw order is part of the format.
Matrix standard_normal(int rows, int cols, Rng &rng) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      m(i, j) = rng.normal();
  return m;
}

// Thin Q of the QR decomposition, with the sign convention diag(R) >= 0 so
// the result is unique per seed.
Matrix orthonormal_columns(const Matrix &m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const Matrix &qr_packed = qr.matrixQR();
  for (int j = 0; j < q.cols(); ++j) {
    if (qr_packed(j, j) < 0.0)
      q.col(j) = -q.col(j);
  }
  return q;
}

Matrix make_orthogonal(int r, int m, Rng &rng) {
  return orthonormal_columns(standard_normal(r, m, rng));
}

// Row-whitening: L0 = (M M^T)^{-1/2} M has orthonormal rows.
Matrix whitened_base(int r, int m, Rng &rng) {
  const Matrix raw = standard_normal(r, m, rng);
  const Matrix gram = raw * raw.transpose(); // r x r, SPD for m > r a.s.
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  if (es.info() != Eigen::Success)
    throw ValidationError("whitened codebook: eigendecomposition failed");
  return es.operatorInverseSqrt() * raw;
}

// Columns are then normalized so every class carries equal weight in the
// superposition.
Matrix make_whitened(int r, int m, Rng &rng) {
  Matrix l0 = whitened_base(r, m, rng);
  for (int j = 0; j < m; ++j)
    l0.col(j).normalize();
  return l0;
}

// Sylvester Hadamard entry: H(i, j) = (-1)^popcount(i & j).
Matrix make_walsh(int r, int m) {
  Matrix h(r, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(r));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < r; ++i) {
      const unsigned bits = static_cast<unsigned>(i) & static_cast<unsigned>(j);
      h(i, j) = (std::popcount(bits) % 2 == 0) ? scale : -scale;
    }
  }
  return h;
}

Matrix make_gaussian(int r, int m, Rng &rng) {
  Matrix l = standard_normal(r, m, rng);
  for (int j = 0; j < m; ++j)
    l.col(j).normalize();
  return l;
}

bool is_power_of_two(int x) {
  return x > 0 && std::has_single_bit(static_cast<unsigned>(x));
}

} // namespace

namespace detail {

Matrix whitened_pre_normalization(int r, int m, std::uint64_t seed) {
  if (r < 1 || m <= r)
    throw DimensionError("whitened base requires 1 <= r < m");
  Rng rng(seed);
  return whitened_base(r, m, rng);
}

} // namespace detail

std::string to_string(CodebookMode mode) {
  switch (mode) {
  case CodebookMode::Orthogonal:
    return "orthogonal";
  case CodebookMode::Whitened:
    return "whitened";
  case CodebookMode::Walsh:
    return "walsh";
  case CodebookMode::Gaussian:
    return "gaussian";
  }
  return "orthogonal";
}

CodebookMode codebook_mode_from_string(const std::string &name) {
  if (name == "orthogonal")
    return CodebookMode::Orthogonal;
  if (name == "whitened")
    return CodebookMode::Whitened;
  if (name == "walsh")
    return CodebookMode::Walsh;
  if (name == "gaussian")
    return CodebookMode::Gaussian;
  throw ParseError("unknown codebook mode '" + name + "'");
}

LabelCodebook make_codebook(int r, int m, CodebookMode mode,
                            std::uint64_t seed) {
  if (r < 1)
    throw ParameterError("codebook: r must be >= 1, got " + std::to_string(r));
  if (m < 2)
    throw ParameterError("codebook: m must be >= 2, got " + std::to_string(m));

  LabelCodebook book;
  book.mode = mode;
  book.seed = seed;
  Rng rng(seed);

  switch (mode) {
  case CodebookMode::Orthogonal:
    if (r < m)
      throw DimensionError("orthogonal codebook requires r >= m, got r=" +
                           std::to_string(r) + ", m=" + std::to_string(m));
    book.matrix = make_orthogonal(r, m, rng);
    break;
  case CodebookMode::Whitened:
    if (r >= m)
      throw DimensionError("whitened codebook requires r < m, got r=" +
                           std::to_string(r) + ", m=" + std::to_string(m));
    book.matrix = make_whitened(r, m, rng);
    break;
  case CodebookMode::Walsh:
    if (!is_power_of_two(r))
      throw DimensionError("walsh codebook requires power-of-two r, got r=" +
                           std::to_string(r));
    if (r < m)
      throw DimensionError("walsh codebook requires r >= m, got r=" +
                           std::to_string(r) + ", m=" + std::to_string(m));
    book.matrix = make_walsh(r, m);
    break;
  case CodebookMode::Gaussian:
    book.matrix = make_gaussian(r, m, rng);
    break;
  }
  return book;
}

double crosstalk(const LabelCodebook &codebook) {
  // Positive and negative terms accumulate separately; balanced bipolar
  // codes then cancel exactly, which one running sum (or a blocked GEMM)
  // does not guarantee.
  const Matrix &l = codebook.matrix;
  double worst = 0.0;
  for (int j = 0; j < l.cols(); ++j) {
    for (int k = j + 1; k < l.cols(); ++k) {
      double positive = 0.0;
      double negative = 0.0;
      for (int i = 0; i < l.rows(); ++i) {
        const double term = l(i, j) * l(i, k);
        if (term >= 0.0)
          positive += term;
        else
          negative -= term;
      }
      worst = std::max(worst, std::abs(positive - negative));
    }
  }
  return worst;
}

void export_codebook_csv(const LabelCodebook &codebook, std::ostream &out) {
  out << "r,m,mode,seed\n";
  out << codebook.r() << ',' << codebook.m() << ',' << to_string(codebook.mode)
      << ',' << codebook.seed << '\n';
  for (int i = 0; i < codebook.r(); ++i) {
    for (int j = 0; j < codebook.m(); ++j) {
      if (j > 0)
        out << ',';
      out << format_double(codebook.matrix(i, j));
    }
    out << '\n';
  }
}

void export_codebook_csv(const LabelCodebook &codebook,
                         const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  export_codebook_csv(codebook, out);
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

namespace {

std::vector<std::string> split_csv_row(const std::string &line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ','))
    fields.push_back(field);
  return fields;
}

} // namespace

LabelCodebook import_codebook_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != "r,m,mode,seed")
    throw ParseError("codebook CSV: missing 'r,m,mode,seed' header");
  if (!std::getline(in, line))
    throw ParseError("codebook CSV: missing metadata row");
  const auto meta = split_csv_row(line);
  if (meta.size() != 4)
    throw ParseError("codebook CSV: metadata row needs 4 fields");

  LabelCodebook book;
  const int r = std::atoi(meta[0].c_str());
  const int m = std::atoi(meta[1].c_str());
  if (r < 1 || m < 1)
    throw ParseError("codebook CSV: invalid dimensions in metadata row");
  book.mode = codebook_mode_from_string(meta[2]);
  book.seed = std::strtoull(meta[3].c_str(), nullptr, 10);
  book.matrix.resize(r, m);

  for (int i = 0; i < r; ++i) {
    if (!std::getline(in, line))
      throw ParseError("codebook CSV: expected " + std::to_string(r) +
                       " matrix rows, got " + std::to_string(i));
    const auto fields = split_csv_row(line);
    if (static_cast<int>(fields.size()) != m)
      throw ParseError("codebook CSV: row " + std::to_string(i + 3) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(m));
    for (int j = 0; j < m; ++j) {
      char *end = nullptr;
      book.matrix(i, j) = std::strtod(fields[j].c_str(), &end);
      if (end != fields[j].c_str() + fields[j].size())
        throw ParseError("codebook CSV: non-numeric entry in row " +
                         std::to_string(i + 3));
    }
  }
  return book;
}

LabelCodebook import_codebook_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open '" + path + "'");
  return import_codebook_csv(in);
}

} // namespace gkv
