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

#include <benchmark/benchmark.h>

#include "gkv/codebook.hpp"
#include "gkv/distributed_memory.hpp"
#include "gkv/local_memory.hpp"
#include "gkv/noise.hpp"
#include "gkv/rng.hpp"

namespace {

constexpr int kDim = 512;
constexpr int kWays = 20;
constexpr int kShots = 5;

gkv::SupportSet bench_support() {
  gkv::Rng rng(1);
  gkv::SupportSet support;
  support.d = kDim;
  support.m = kWays;
  support.n = kShots;
  support.vectors.resize(kDim, kWays * kShots);
  for (int i = 0; i < kWays * kShots; ++i) {
    for (int k = 0; k < kDim; ++k)
      support.vectors(k, i) = rng.normal();
    support.vectors.col(i).normalize();
    support.class_index.push_back(i / kShots + 1);
  }
  return support;
}

gkv::Vector bench_query() {
  gkv::Rng rng(2);
  gkv::Vector q(kDim);
  for (int k = 0; k < kDim; ++k)
    q[k] = rng.normal();
  q.normalize();
  return q;
}

void MakeOrthogonalCodebook(benchmark::State &state) {
  const int r = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto book = gkv::make_codebook(r, kWays, gkv::CodebookMode::Orthogonal,
                                   seed++);
    benchmark::DoNotOptimize(book.matrix.data());
  }
}
BENCHMARK(MakeOrthogonalCodebook)->Arg(50)->Arg(200)->Arg(800);

void BuildDistributed(benchmark::State &state) {
  const int r = static_cast<int>(state.range(0));
  const auto support = bench_support();
  const auto book =
      gkv::make_codebook(r, kWays, gkv::CodebookMode::Orthogonal, 3);
  for (auto _ : state) {
    auto memory = gkv::build_distributed(support, book);
    benchmark::DoNotOptimize(memory.matrix.data());
  }
}
BENCHMARK(BuildDistributed)->Arg(50)->Arg(200)->Arg(800);

void InferDistributed(benchmark::State &state) {
  const int r = static_cast<int>(state.range(0));
  const auto support = bench_support();
  const auto book =
      gkv::make_codebook(r, kWays, gkv::CodebookMode::Orthogonal, 4);
  const auto memory = gkv::build_distributed(support, book);
  const auto query = bench_query();
  for (auto _ : state) {
    auto scores = gkv::infer_distributed(memory, book, query);
    benchmark::DoNotOptimize(scores.scores.data());
  }
}
BENCHMARK(InferDistributed)->Arg(50)->Arg(200)->Arg(800);

void InferLocal(benchmark::State &state) {
  const auto support = bench_support();
  const auto memory = gkv::build_local(support, gkv::Precision::Real);
  const auto query = bench_query();
  for (auto _ : state) {
    auto scores = gkv::class_scores(memory, gkv::similarities(memory, query));
    benchmark::DoNotOptimize(scores.scores.data());
  }
}
BENCHMARK(InferLocal);

void MapToDevices(benchmark::State &state) {
  const int r = static_cast<int>(state.range(0));
  const auto support = bench_support();
  const auto book =
      gkv::make_codebook(r, kWays, gkv::CodebookMode::Orthogonal, 5);
  const auto memory = gkv::bipolarize(gkv::build_distributed(support, book),
                                      gkv::Precision::Bipolar);
  const auto params = gkv::default_pcm_params();
  gkv::Rng rng(6);
  for (auto _ : state) {
    auto weights = gkv::map_to_devices(memory.matrix, memory.precision,
                                       params, std::nullopt, rng);
    benchmark::DoNotOptimize(weights.data());
  }
}
BENCHMARK(MapToDevices)->Arg(50)->Arg(200)->Arg(800);

} // namespace

BENCHMARK_MAIN();
