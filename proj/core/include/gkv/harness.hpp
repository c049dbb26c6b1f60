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

#ifndef GKV_HARNESS_HPP
#define GKV_HARNESS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gkv/codebook.hpp"
#include "gkv/episodes.hpp"
#include "gkv/noise.hpp"
#include "gkv/types.hpp"

namespace gkv {

enum class MemoryKind { Local, Distributed };

std::string to_string(MemoryKind kind);
MemoryKind memory_kind_from_string(const std::string &name);

/// Fully specified experiment: memory variant, noise channel, problem
/// shape, episode count, and the master seed everything derives from.
struct ExperimentSpec {
  MemoryKind memory_kind = MemoryKind::Distributed;
  int r = 100; // distributed only
  Precision precision = Precision::Real;
  /// Codebook construction; nullopt picks Orthogonal when r >= m and
  /// Whitened otherwise.
  std::optional<CodebookMode> codebook_mode;
  NoiseSpec noise;
  int m = 20;
  int n = 5;
  int queries_per_class = 15;
  int episodes = 1000;
  std::shared_ptr<const EmbeddingBank> bank;
  std::uint64_t master_seed = 1;
  /// Quantize queries to the memory precision (the default); false keeps
  /// real-valued queries against a quantized memory.
  bool quantize_queries = true;
  int workers = 1;

  void validate() const;
};

/// Outcome of one episode under one spec.
struct EpisodeResult {
  std::uint64_t episode_seed = 0;
  Matrix scores;              // m x num_queries, one column per query
  std::vector<int> predicted; // 1-based
  std::vector<int> truth;     // 1-based
  double accuracy = 0.0;
};

/// One evaluated point of a sweep. `r` is set for grid sweeps where the
/// memory dimension is a second parameter next to the swept axis.
struct SweepPoint {
  double axis = 0.0;
  std::optional<double> r;
  double mean_accuracy = 0.0;
  double std_error = 0.0;
  int episodes = 0;
};

struct SweepResult {
  std::string axis_name; // "r", "snr_db", or "variation"
  std::vector<SweepPoint> points;
};

/// Minimal redundancy found by the iso-accuracy search.
struct IsoRResult {
  double variation = 0.0;
  bool reached = false;
  int r = 0; // r_max when not reached
  double baseline_accuracy = 0.0;
  double achieved_accuracy = 0.0;
  int episodes = 0;
};

/// One row of a scaling study: the iso-r answer for a given problem size.
struct ScalingRow {
  int m = 0;
  int n = 0;
  IsoRResult iso;
};

/// Accuracy threshold slack of the iso-r search, in accuracy units
/// (0.25 percentage points). Without it Monte-Carlo noise makes "iso"
/// ill-defined.
inline constexpr double kIsoAccuracyTolerance = 0.0025;

/// Episode seeds shared by every axis point of a sweep, derived from the
/// master seed. Paired evaluation removes sampling variance from
/// cross-point comparisons.
std::vector<std::uint64_t> episode_seeds(std::uint64_t master_seed,
                                         int episodes);

/// Samples the episode, builds the specified memory, applies the noise
/// channel, classifies every query. Pure function of (spec, episode_seed).
EpisodeResult run_episode(const ExperimentSpec &spec,
                          std::uint64_t episode_seed);

/// Mean accuracy (and standard error) over the shared episode list;
/// episodes fan out across spec.workers threads, aggregation order fixed.
struct AccuracyStats {
  double mean = 0.0;
  double std_error = 0.0;
  int episodes = 0;
};
AccuracyStats evaluate_spec(const ExperimentSpec &spec);

/// Accuracy vs label dimensionality r (noiseless compression trade-off).
SweepResult sweep_r(const ExperimentSpec &base, const std::vector<int> &rs);

/// Accuracy grid over (snr_db, r) under additive white noise on gamma.
/// An empty r list evaluates base.memory_kind as a single series (the
/// local-memory baseline uses r = mn in the output).
SweepResult sweep_snr(const ExperimentSpec &base,
                      const std::vector<double> &snr_dbs,
                      const std::vector<int> &rs);

/// Accuracy grid over (conductance variation, r) under the device model.
/// Requires Bipolar or Binary precision; throws StateError otherwise.
SweepResult sweep_pcm(const ExperimentSpec &base,
                      const std::vector<double> &variations,
                      const std::vector<int> &rs);

/// Noiseless accuracy of the local memory over the shared episodes, at the
/// spec's precision; the iso-accuracy baseline of the device experiments.
AccuracyStats local_baseline(const ExperimentSpec &base);

/// Smallest r whose mean accuracy over the shared episodes reaches
/// baseline_accuracy - kIsoAccuracyTolerance at the given conductance
/// variation. Exponential doubling brackets the answer, bisection refines
/// it; every candidate is evaluated on the same episode list. reached is
/// false when r_max does not attain the target.
IsoRResult find_iso_r(const ExperimentSpec &base, double variation,
                      double baseline_accuracy, int r_max);

/// find_iso_r across problem sizes at fixed variations; baselines are
/// recomputed per problem size.
std::vector<ScalingRow>
scaling_study(const ExperimentSpec &base,
              const std::vector<std::pair<int, int>> &problem_sizes,
              const std::vector<double> &variations, int r_max);

} // namespace gkv

#endif // GKV_HARNESS_HPP
