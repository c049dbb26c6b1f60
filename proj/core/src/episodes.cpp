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

#include "gkv/episodes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "gkv/errors.hpp"
#include "gkv/format.hpp"

namespace gkv {

int EmbeddingBank::min_samples_per_class() const {
  int least = std::numeric_limits<int>::max();
  for (const auto &samples : class_samples)
    least = std::min(least, static_cast<int>(samples.cols()));
  return class_samples.empty() ? 0 : least;
}

int EmbeddingBank::total_samples() const {
  int total = 0;
  for (const auto &samples : class_samples)
    total += static_cast<int>(samples.cols());
  return total;
}

void GeneratorParams::validate() const {
  if (d < 1)
    throw ParameterError("generator: d must be >= 1");
  if (num_classes < 1)
    throw ParameterError("generator: num_classes must be >= 1");
  if (samples_per_class < 1)
    throw ParameterError("generator: samples_per_class must be >= 1");
  if (within_class_sd < 0.0)
    throw ParameterError("generator: within_class_sd must be >= 0");
}

namespace {

Vector draw_prototype(const GeneratorParams &params, Rng &rng) {
  Vector proto(params.d);
  if (params.prototype_mode == GeneratorParams::PrototypeMode::GaussianUnit) {
    for (int k = 0; k < params.d; ++k)
      proto[k] = rng.normal();
    proto.normalize();
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(params.d));
    for (int k = 0; k < params.d; ++k)
      proto[k] = rng.uniform() < 0.5 ? -scale : scale;
  }
  return proto;
}

} // namespace

EmbeddingBank generate_bank(const GeneratorParams &params) {
  params.validate();
  Rng rng(params.seed);

  EmbeddingBank bank;
  bank.d = params.d;
  bank.class_ids.resize(static_cast<std::size_t>(params.num_classes));
  bank.class_samples.reserve(static_cast<std::size_t>(params.num_classes));

  for (int c = 0; c < params.num_classes; ++c) {
    bank.class_ids[static_cast<std::size_t>(c)] = c + 1;
    const Vector proto = draw_prototype(params, rng);
    Matrix samples(params.d, params.samples_per_class);
    for (int s = 0; s < params.samples_per_class; ++s) {
      Vector v = proto;
      for (int k = 0; k < params.d; ++k)
        v[k] += rng.normal(0.0, params.within_class_sd);
      v.normalize();
      samples.col(s) = v;
    }
    bank.class_samples.push_back(std::move(samples));
  }
  return bank;
}

namespace {

// First `take` elements of a seeded partial Fisher-Yates shuffle of 0..n-1.
std::vector<int> sample_without_replacement(int n, int take, Rng &rng) {
  std::vector<int> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < take; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) +
        rng.uniform_index(static_cast<std::size_t>(n - i));
    std::swap(indices[static_cast<std::size_t>(i)], indices[j]);
  }
  indices.resize(static_cast<std::size_t>(take));
  return indices;
}

} // namespace

std::pair<SupportSet, QuerySet> sample_episode(const EmbeddingBank &bank,
                                               int m, int n, int q_per_class,
                                               Rng &rng) {
  if (m < 1 || n < 1 || q_per_class < 0)
    throw ParameterError("sample_episode: m, n must be >= 1, queries >= 0");
  if (m > bank.num_classes())
    throw CapacityError("sample_episode: requested " + std::to_string(m) +
                        " classes, bank has " +
                        std::to_string(bank.num_classes()));
  if (bank.min_samples_per_class() < n + q_per_class)
    throw CapacityError("sample_episode: need " +
                        std::to_string(n + q_per_class) +
                        " samples per class, bank guarantees only " +
                        std::to_string(bank.min_samples_per_class()));

  const std::vector<int> classes =
      sample_without_replacement(bank.num_classes(), m, rng);

  SupportSet support;
  support.d = bank.d;
  support.m = m;
  support.n = n;
  support.vectors.resize(bank.d, m * n);
  support.class_index.resize(static_cast<std::size_t>(m) *
                             static_cast<std::size_t>(n));

  QuerySet queries;
  queries.queries.resize(bank.d, m * q_per_class);
  queries.true_class.resize(static_cast<std::size_t>(m) *
                            static_cast<std::size_t>(q_per_class));

  for (int j = 0; j < m; ++j) {
    const Matrix &pool =
        bank.class_samples[static_cast<std::size_t>(classes[j])];
    const std::vector<int> picks = sample_without_replacement(
        static_cast<int>(pool.cols()), n + q_per_class, rng);
    for (int s = 0; s < n; ++s) {
      support.vectors.col(j * n + s) = pool.col(picks[static_cast<std::size_t>(s)]);
      support.class_index[static_cast<std::size_t>(j * n + s)] = j + 1;
    }
    for (int s = 0; s < q_per_class; ++s) {
      queries.queries.col(j * q_per_class + s) =
          pool.col(picks[static_cast<std::size_t>(n + s)]);
      queries.true_class[static_cast<std::size_t>(j * q_per_class + s)] = j + 1;
    }
  }
  return {std::move(support), std::move(queries)};
}

EmbeddingBank import_bank_csv(std::istream &in, const std::string &name) {
  std::map<int, std::vector<Vector>> by_class;
  int d = -1;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty())
      continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> fields;
    while (std::getline(ss, field, ',')) {
      char *end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size())
        throw ParseError(name + ": non-numeric entry in row " +
                         std::to_string(row));
      fields.push_back(v);
    }
    if (fields.size() < 2)
      throw ParseError(name + ": row " + std::to_string(row) +
                       " needs a class id and at least one coordinate");
    const double id_raw = fields[0];
    if (id_raw < 1.0 || id_raw != std::floor(id_raw))
      throw ParseError(name + ": row " + std::to_string(row) +
                       " class id must be a positive integer");
    const int row_d = static_cast<int>(fields.size()) - 1;
    if (d < 0)
      d = row_d;
    else if (row_d != d)
      throw ParseError(name + ": row " + std::to_string(row) + " has " +
                       std::to_string(row_d) + " coordinates, expected " +
                       std::to_string(d));
    Vector v(d);
    for (int k = 0; k < d; ++k)
      v[k] = fields[static_cast<std::size_t>(k + 1)];
    const double norm = v.norm();
    if (!(norm > 0.0))
      throw ParseError(name + ": row " + std::to_string(row) +
                       " is a zero vector");
    by_class[static_cast<int>(id_raw)].push_back(v / norm);
  }
  if (by_class.empty())
    throw ParseError(name + ": no samples found");

  EmbeddingBank bank;
  bank.d = d;
  for (const auto &[class_id, vectors] : by_class) {
    bank.class_ids.push_back(class_id);
    Matrix samples(d, static_cast<int>(vectors.size()));
    for (std::size_t s = 0; s < vectors.size(); ++s)
      samples.col(static_cast<int>(s)) = vectors[s];
    bank.class_samples.push_back(std::move(samples));
  }
  return bank;
}

EmbeddingBank import_bank_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open bank file '" + path + "'");
  return import_bank_csv(in, path);
}

void export_bank_csv(const EmbeddingBank &bank, std::ostream &out) {
  for (int c = 0; c < bank.num_classes(); ++c) {
    const Matrix &samples = bank.class_samples[static_cast<std::size_t>(c)];
    for (int s = 0; s < samples.cols(); ++s) {
      out << bank.class_ids[static_cast<std::size_t>(c)];
      for (int k = 0; k < bank.d; ++k)
        out << ',' << format_double(samples(k, s));
      out << '\n';
    }
  }
}

void export_bank_csv(const EmbeddingBank &bank, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  export_bank_csv(bank, out);
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

double mean_between_class_cosine(const EmbeddingBank &bank,
                                 std::size_t max_pairs, std::uint64_t seed) {
  if (bank.num_classes() < 2)
    return 0.0;
  Rng rng(derive_seed(seed, 0x636f73)); // "cos"
  double total = 0.0;
  std::size_t pairs = 0;
  while (pairs < max_pairs) {
    const int a = static_cast<int>(
        rng.uniform_index(static_cast<std::size_t>(bank.num_classes())));
    const int b = static_cast<int>(
        rng.uniform_index(static_cast<std::size_t>(bank.num_classes())));
    if (a == b)
      continue;
    const Matrix &sa = bank.class_samples[static_cast<std::size_t>(a)];
    const Matrix &sb = bank.class_samples[static_cast<std::size_t>(b)];
    const int ia = static_cast<int>(
        rng.uniform_index(static_cast<std::size_t>(sa.cols())));
    const int ib = static_cast<int>(
        rng.uniform_index(static_cast<std::size_t>(sb.cols())));
    total += std::abs(sa.col(ia).dot(sb.col(ib)));
    ++pairs;
  }
  return total / static_cast<double>(pairs);
}

} // namespace gkv
