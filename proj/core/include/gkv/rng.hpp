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

#ifndef GKV_RNG_HPP
#define GKV_RNG_HPP

#include <cstdint>
#include <random>

namespace gkv {

/// splitmix64 finalizer; mixes a 64-bit value into a well-distributed one.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives the seed of an independent stream from (master, index).
/// Episodes, codebooks, and noise channels each get their own stream so
/// results do not depend on evaluation order or worker scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index));
}

/// Deterministic random stream. One instance per episode/purpose; never
/// shared across threads.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Standard normal draw.
  double normal() { return normal_(engine_); }

  /// N(mean, sd^2); sd == 0 returns mean exactly and still advances the
  /// stream, so zero-variance limits stay aligned with noisy runs.
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Uniform in [0, 1).
  double uniform() { return uniform_(engine_); }

  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64 &engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace gkv

#endif // GKV_RNG_HPP
