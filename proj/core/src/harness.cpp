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

#include "gkv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "gkv/distributed_memory.hpp"
#include "gkv/errors.hpp"
#include "gkv/local_memory.hpp"
#include "gkv/quantize.hpp"

namespace gkv {

namespace {

// Stream tags separating the independent per-episode RNG streams.
constexpr std::uint64_t kStreamSampling = 1;
constexpr std::uint64_t kStreamCodebook = 2;
constexpr std::uint64_t kStreamNoise = 3;

CodebookMode resolve_codebook_mode(const ExperimentSpec &spec) {
  if (spec.codebook_mode)
    return *spec.codebook_mode;
  return spec.r >= spec.m ? CodebookMode::Orthogonal : CodebookMode::Whitened;
}

// m = 1 has no meaningful codebook; a single unit label column keeps the
// degenerate case flowing through the regular inference path.
LabelCodebook harness_codebook(int r, int m, CodebookMode mode,
                               std::uint64_t seed) {
  if (m == 1) {
    LabelCodebook book;
    book.mode = mode;
    book.seed = seed;
    book.matrix =
        Matrix::Constant(r, 1, 1.0 / std::sqrt(static_cast<double>(r)));
    return book;
  }
  return make_codebook(r, m, mode, seed);
}

// Runs fn(0..count) across `workers` threads pulling indices from a shared
// counter. Results land in caller-owned slots, so aggregation order stays
// fixed regardless of scheduling.
void run_indexed(int workers, std::size_t count,
                 const std::function<void(std::size_t)> &fn) {
  const int n_threads = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(std::max(workers, 1)), count));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto loop = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed))
        return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error)
          first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads - 1));
  for (int t = 0; t < n_threads - 1; ++t)
    pool.emplace_back(loop);
  loop();
  for (auto &thread : pool)
    thread.join();
  if (first_error)
    std::rethrow_exception(first_error);
}

AccuracyStats aggregate(const std::vector<double> &accuracies) {
  AccuracyStats stats;
  stats.episodes = static_cast<int>(accuracies.size());
  double sum = 0.0;
  for (double a : accuracies)
    sum += a;
  stats.mean = sum / static_cast<double>(accuracies.size());
  if (accuracies.size() > 1) {
    double ss = 0.0;
    for (double a : accuracies)
      ss += (a - stats.mean) * (a - stats.mean);
    const double n = static_cast<double>(accuracies.size());
    stats.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return stats;
}

} // namespace

std::string to_string(MemoryKind kind) {
  return kind == MemoryKind::Local ? "local" : "distributed";
}

MemoryKind memory_kind_from_string(const std::string &name) {
  if (name == "local")
    return MemoryKind::Local;
  if (name == "distributed")
    return MemoryKind::Distributed;
  throw ParseError("unknown memory kind '" + name +
                   "' (expected local or distributed)");
}

void ExperimentSpec::validate() const {
  if (!bank)
    throw ValidationError("experiment: no embedding bank attached");
  if (m < 1 || n < 1)
    throw ParameterError("experiment: m and n must be >= 1");
  if (queries_per_class < 1)
    throw ParameterError("experiment: queries_per_class must be >= 1");
  if (episodes < 1)
    throw ParameterError("experiment: episodes must be >= 1");
  if (memory_kind == MemoryKind::Distributed && r < 1)
    throw ParameterError("experiment: r must be >= 1");
  if (workers < 1)
    throw ParameterError("experiment: workers must be >= 1");
  if (noise.kind == NoiseSpec::Kind::Pcm) {
    noise.pcm.validate();
    if (precision == Precision::Real)
      throw StateError(
          "experiment: PCM noise requires bipolar or binary precision");
  }
}

std::vector<std::uint64_t> episode_seeds(std::uint64_t master_seed,
                                         int episodes) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(episodes));
  for (int i = 0; i < episodes; ++i)
    seeds[static_cast<std::size_t>(i)] =
        derive_seed(master_seed, static_cast<std::uint64_t>(i));
  return seeds;
}

EpisodeResult run_episode(const ExperimentSpec &spec,
                          std::uint64_t episode_seed) {
  spec.validate();

  Rng sampling_rng(derive_seed(episode_seed, kStreamSampling));
  auto [support, queries] = sample_episode(*spec.bank, spec.m, spec.n,
                                           spec.queries_per_class,
                                           sampling_rng);

  Matrix query_matrix = queries.queries;
  if (spec.precision != Precision::Real && spec.quantize_queries)
    query_matrix = quantize(query_matrix, spec.precision);

  Rng noise_rng(
      derive_seed(derive_seed(spec.noise.seed, episode_seed), kStreamNoise));

  // All queries of the episode are classified in one batch; per-query this
  // is exactly the similarity -> (sharpen) -> class-score pipeline with
  // identity sharpening.
  Matrix scores; // m x num_queries
  if (spec.memory_kind == MemoryKind::Local) {
    const LocalKVMemory memory = build_local(support, spec.precision);
    Matrix weights = memory.keys;
    if (spec.noise.kind == NoiseSpec::Kind::Pcm)
      weights = map_to_devices(weights, spec.precision, spec.noise.pcm,
                               std::nullopt, noise_rng);
    Matrix alpha = weights.transpose() * query_matrix; // mn x q
    if (spec.noise.kind == NoiseSpec::Kind::WhiteSnr)
      alpha = add_white_noise(alpha, spec.noise.snr_db, noise_rng);
    scores = memory.values * alpha;
  } else {
    const LabelCodebook codebook =
        harness_codebook(spec.r, spec.m, resolve_codebook_mode(spec),
                         derive_seed(episode_seed, kStreamCodebook));
    DistributedKeyMemory memory = build_distributed(support, codebook);
    if (spec.precision != Precision::Real)
      memory = bipolarize(memory, spec.precision);
    Matrix weights = memory.matrix;
    if (spec.noise.kind == NoiseSpec::Kind::Pcm)
      weights = map_to_devices(weights, spec.precision, spec.noise.pcm,
                               std::nullopt, noise_rng);
    Matrix gamma = weights * query_matrix; // r x q
    if (spec.noise.kind == NoiseSpec::Kind::WhiteSnr)
      gamma = add_white_noise(gamma, spec.noise.snr_db, noise_rng);
    scores = codebook.matrix.transpose() * gamma;
  }

  EpisodeResult result;
  result.episode_seed = episode_seed;
  result.scores = std::move(scores);
  result.truth = queries.true_class;
  const int num_queries = queries.count();
  result.predicted.resize(static_cast<std::size_t>(num_queries));
  int correct = 0;
  for (int j = 0; j < num_queries; ++j) {
    const Vector column = result.scores.col(j);
    const int predicted = argmax_class(column);
    result.predicted[static_cast<std::size_t>(j)] = predicted;
    if (predicted == result.truth[static_cast<std::size_t>(j)])
      ++correct;
  }
  result.accuracy = static_cast<double>(correct) /
                    static_cast<double>(num_queries);
  return result;
}

AccuracyStats evaluate_spec(const ExperimentSpec &spec) {
  spec.validate();
  const auto seeds = episode_seeds(spec.master_seed, spec.episodes);
  std::vector<double> accuracies(seeds.size(), 0.0);
  run_indexed(spec.workers, seeds.size(), [&](std::size_t i) {
    accuracies[i] = run_episode(spec, seeds[i]).accuracy;
  });
  return aggregate(accuracies);
}

SweepResult sweep_r(const ExperimentSpec &base, const std::vector<int> &rs) {
  SweepResult result;
  result.axis_name = "r";
  ExperimentSpec spec = base;
  spec.memory_kind = MemoryKind::Distributed;
  for (int r : rs) {
    spec.r = r;
    const AccuracyStats stats = evaluate_spec(spec);
    result.points.push_back({static_cast<double>(r), std::nullopt, stats.mean,
                             stats.std_error, stats.episodes});
  }
  return result;
}

namespace {

// Shared shape of the two grid sweeps: an outer series over r (or a single
// series for the local memory) and an inner swept axis.
SweepResult
grid_sweep(const ExperimentSpec &base, const std::string &axis_name,
           const std::vector<double> &axis_values, const std::vector<int> &rs,
           const std::function<void(ExperimentSpec &, double)> &apply_axis) {
  SweepResult result;
  result.axis_name = axis_name;

  std::vector<std::optional<int>> series;
  if (rs.empty()) {
    series.push_back(std::nullopt); // evaluate base.memory_kind as-is
  } else {
    for (int r : rs)
      series.push_back(r);
  }

  for (const auto &series_r : series) {
    ExperimentSpec spec = base;
    if (series_r) {
      spec.memory_kind = MemoryKind::Distributed;
      spec.r = *series_r;
    }
    const double reported_r = spec.memory_kind == MemoryKind::Local
                                  ? static_cast<double>(spec.m) * spec.n
                                  : static_cast<double>(spec.r);
    for (double axis : axis_values) {
      apply_axis(spec, axis);
      const AccuracyStats stats = evaluate_spec(spec);
      result.points.push_back(
          {axis, reported_r, stats.mean, stats.std_error, stats.episodes});
    }
  }
  return result;
}

} // namespace

SweepResult sweep_snr(const ExperimentSpec &base,
                      const std::vector<double> &snr_dbs,
                      const std::vector<int> &rs) {
  return grid_sweep(base, "snr_db", snr_dbs, rs,
                    [](ExperimentSpec &spec, double snr_db) {
                      spec.noise.kind = NoiseSpec::Kind::WhiteSnr;
                      spec.noise.snr_db = snr_db;
                    });
}

SweepResult sweep_pcm(const ExperimentSpec &base,
                      const std::vector<double> &variations,
                      const std::vector<int> &rs) {
  if (base.precision == Precision::Real)
    throw StateError("sweep_pcm: requires bipolar or binary precision");
  return grid_sweep(base, "variation", variations, rs,
                    [](ExperimentSpec &spec, double variation) {
                      spec.noise.kind = NoiseSpec::Kind::Pcm;
                      spec.noise.pcm.g_prog_rel_sd = variation;
                    });
}

AccuracyStats local_baseline(const ExperimentSpec &base) {
  ExperimentSpec spec = base;
  spec.memory_kind = MemoryKind::Local;
  spec.noise = NoiseSpec::none();
  return evaluate_spec(spec);
}

IsoRResult find_iso_r(const ExperimentSpec &base, double variation,
                      double baseline_accuracy, int r_max) {
  if (!(baseline_accuracy > 0.0) || baseline_accuracy > 1.0)
    throw ParameterError("find_iso_r: baseline accuracy must be in (0, 1]");
  if (r_max < 1)
    throw ParameterError("find_iso_r: r_max must be >= 1");
  if (base.precision == Precision::Real)
    throw StateError("find_iso_r: requires bipolar or binary precision");

  ExperimentSpec spec = base;
  spec.memory_kind = MemoryKind::Distributed;
  spec.noise.kind = NoiseSpec::Kind::Pcm;
  spec.noise.pcm.g_prog_rel_sd = variation;

  const double threshold = baseline_accuracy - kIsoAccuracyTolerance;
  std::map<int, double> cache;
  auto accuracy_at = [&](int r) {
    const auto found = cache.find(r);
    if (found != cache.end())
      return found->second;
    spec.r = r;
    const double accuracy = evaluate_spec(spec).mean;
    cache.emplace(r, accuracy);
    return accuracy;
  };

  IsoRResult result;
  result.variation = variation;
  result.baseline_accuracy = baseline_accuracy;
  result.episodes = base.episodes;

  // Exponential doubling to bracket, bisection to pin down; every candidate
  // sees the same shared episode list.
  int last_failing = 0;
  int first_passing = -1;
  for (int r = 1;;) {
    if (accuracy_at(r) >= threshold) {
      first_passing = r;
      break;
    }
    last_failing = r;
    if (r >= r_max)
      break;
    r = std::min(r * 2, r_max);
  }
  if (first_passing < 0) {
    result.reached = false;
    result.r = r_max;
    result.achieved_accuracy = cache.at(r_max);
    return result;
  }
  while (first_passing - last_failing > 1) {
    const int mid = last_failing + (first_passing - last_failing) / 2;
    if (accuracy_at(mid) >= threshold)
      first_passing = mid;
    else
      last_failing = mid;
  }
  result.reached = true;
  result.r = first_passing;
  result.achieved_accuracy = cache.at(first_passing);
  return result;
}

std::vector<ScalingRow>
scaling_study(const ExperimentSpec &base,
              const std::vector<std::pair<int, int>> &problem_sizes,
              const std::vector<double> &variations, int r_max) {
  std::vector<ScalingRow> rows;
  for (const auto &[m, n] : problem_sizes) {
    ExperimentSpec spec = base;
    spec.m = m;
    spec.n = n;
    const double baseline = local_baseline(spec).mean;
    for (double variation : variations)
      rows.push_back({m, n, find_iso_r(spec, variation, baseline, r_max)});
  }
  return rows;
}

} // namespace gkv
