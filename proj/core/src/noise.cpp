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

#include "gkv/noise.hpp"

#include <cmath>
#include <string>

#include "gkv/errors.hpp"

namespace gkv {

double PcmParams::nominal_set_conductance() const {
  return g0 * std::pow(t, -nu);
}

void PcmParams::validate() const {
  if (!(t > 0.0))
    throw ParameterError("pcm: t must be > 0");
  if (!(g0 > 0.0))
    throw ParameterError("pcm: g0 must be > 0");
  if (nu < 0.0)
    throw ParameterError("pcm: nu must be >= 0");
  if (g_read_sd < 0.0 || g_prog_rel_sd < 0.0 || nu_rel_sd < 0.0)
    throw ParameterError("pcm: standard deviations must be >= 0");
}

PcmParams default_pcm_params() { return PcmParams{}; }

double sample_conductance(const PcmParams &params, Rng &rng) {
  // Fixed draw order: read, programming, drift.
  const double read = rng.normal(0.0, params.g_read_sd);
  const double prog = rng.normal(1.0, params.g_prog_rel_sd);
  const double drift = rng.normal(1.0, params.nu_rel_sd);
  return read + (params.g0 * prog) * std::pow(params.t, -params.nu * drift);
}

Matrix map_to_devices(const Matrix &key_matrix, Precision precision,
                      const PcmParams &params,
                      std::optional<double> g_prog_override, Rng &rng) {
  if (precision == Precision::Real)
    throw StateError("map_to_devices: only quantized memories map to devices");
  params.validate();

  PcmParams effective = params;
  if (g_prog_override) {
    if (*g_prog_override < 0.0)
      throw ParameterError("map_to_devices: negative conductance variation");
    effective.g_prog_rel_sd = *g_prog_override;
  }
  const double nominal = effective.nominal_set_conductance();

  Matrix weights(key_matrix.rows(), key_matrix.cols());
  // Column-major entry order, matching the storage layout.
  for (int j = 0; j < key_matrix.cols(); ++j) {
    for (int i = 0; i < key_matrix.rows(); ++i) {
      const double entry = key_matrix(i, j);
      double conductance = 0.0;
      if (precision == Precision::Binary) {
        // One device per entry; a reset entry still carries read noise.
        conductance = entry == 1.0
                          ? sample_conductance(effective, rng)
                          : rng.normal(0.0, effective.g_read_sd);
      } else {
        // Differential pair: +1 = (set, reset), -1 = (reset, set).
        const double g_set = sample_conductance(effective, rng);
        const double g_reset = rng.normal(0.0, effective.g_read_sd);
        conductance = entry == 1.0 ? g_set - g_reset : g_reset - g_set;
      }
      weights(i, j) = conductance / nominal;
    }
  }
  return weights;
}

double white_noise_sigma(const Vector &alpha_reference, double snr_db) {
  if (alpha_reference.size() == 0)
    throw DegenerateSignalError("white noise: empty signal reference");
  const double power = alpha_reference.squaredNorm() /
                       static_cast<double>(alpha_reference.size());
  if (!(power > 0.0))
    throw DegenerateSignalError("white noise: zero signal power");
  return std::sqrt(power / std::pow(10.0, snr_db / 10.0));
}

Vector add_white_noise(const Vector &gamma, const Vector &alpha_reference,
                       double snr_db, Rng &rng) {
  const double sigma = white_noise_sigma(alpha_reference, snr_db);
  Vector noisy = gamma;
  for (int i = 0; i < noisy.size(); ++i)
    noisy[i] += rng.normal(0.0, sigma);
  return noisy;
}

Matrix add_white_noise(const Matrix &gamma, double snr_db, Rng &rng) {
  const double power =
      gamma.squaredNorm() / static_cast<double>(gamma.size());
  if (gamma.size() == 0 || !(power > 0.0))
    throw DegenerateSignalError("white noise: zero signal power");
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  Matrix noisy = gamma;
  for (int j = 0; j < noisy.cols(); ++j)
    for (int i = 0; i < noisy.rows(); ++i)
      noisy(i, j) += rng.normal(0.0, sigma);
  return noisy;
}

} // namespace gkv
