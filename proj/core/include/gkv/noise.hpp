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

#ifndef GKV_NOISE_HPP
#define GKV_NOISE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "gkv/rng.hpp"
#include "gkv/types.hpp"

namespace gkv {

/// Parameters of the phase-change-memory conductance model
///
///   G(t) = N(0, g_read_sd^2)
///        + (g0 * N(1, g_prog_rel_sd^2)) * t^(-nu * N(1, nu_rel_sd^2))
///
/// i.e. additive read noise, multiplicative programming noise, and a
/// Gaussian-perturbed drift exponent.
struct PcmParams {
  double t = 20.0;              // seconds since programming
  double g0 = 22.8e-6;          // mean conductance at t = 1 s (siemens)
  double nu = 0.0598;           // mean drift exponent
  double g_read_sd = 0.496e-6;  // additive read-noise SD (siemens)
  double g_prog_rel_sd = 0.317; // relative programming-noise SD (fraction)
  double nu_rel_sd = 0.0907;    // relative drift-variation SD (fraction)

  /// Nominal set-state conductance g0 * t^(-nu): the value a noiseless
  /// device would read back.
  double nominal_set_conductance() const;

  /// Throws ParameterError if t <= 0, g0 <= 0, nu < 0, or any SD < 0.
  void validate() const;
};

/// Measured device parameters used throughout: t = 20 s, g0 = 22.8 uS,
/// nu = 0.0598, read SD 0.496 uS, programming SD 31.7 %, drift SD 9.07 %.
PcmParams default_pcm_params();

/// Nonideality channel applied during inference.
struct NoiseSpec {
  enum class Kind { None, WhiteSnr, Pcm };

  Kind kind = Kind::None;
  double snr_db = 0.0;             // WhiteSnr only
  PcmParams pcm;                   // Pcm only
  std::uint64_t seed = 0;          // folded into each episode's noise stream

  static NoiseSpec none() { return {}; }
  static NoiseSpec white(double snr_db, std::uint64_t seed = 0) {
    NoiseSpec s;
    s.kind = Kind::WhiteSnr;
    s.snr_db = snr_db;
    s.seed = seed;
    return s;
  }
  static NoiseSpec pcm_model(const PcmParams &params, std::uint64_t seed = 0) {
    NoiseSpec s;
    s.kind = Kind::Pcm;
    s.pcm = params;
    s.seed = seed;
    return s;
  }
};

/// One draw of the device conductance model; three independent normal
/// draws per call (read, programming, drift, in that order). May be
/// negative, since read noise is signed.
double sample_conductance(const PcmParams &params, Rng &rng);

/// Maps a quantized key matrix onto simulated devices and returns the
/// unitless effective-weight matrix actually seen during analog readout.
///
/// Binary: entry 1 is one set device sampled from the conductance model,
/// entry 0 carries read noise only. Bipolar: two devices per entry wired
/// differentially; +1 is (set, reset), -1 is (reset, set); read noise
/// applies per device. All conductances are divided by the nominal set
/// conductance, so the all-SDs-zero limit reproduces the ideal weights
/// exactly.
///
/// g_prog_override, when set, replaces params.g_prog_rel_sd (the swept
/// conductance-variation axis, 0 to 2.0 = 0-200 %).
/// Throws StateError for Real precision input.
Matrix map_to_devices(const Matrix &key_matrix, Precision precision,
                      const PcmParams &params,
                      std::optional<double> g_prog_override, Rng &rng);

/// Noise SD for a requested SNR: sigma^2 = P_signal / 10^(snr_db/10) with
/// P_signal the mean squared entry of the clean reference. Throws
/// DegenerateSignalError when the reference has zero power.
double white_noise_sigma(const Vector &alpha_reference, double snr_db);

/// gamma + i.i.d. N(0, sigma^2) with sigma calibrated against
/// alpha_reference (the episode's clean similarity entries).
Vector add_white_noise(const Vector &gamma, const Vector &alpha_reference,
                       double snr_db, Rng &rng);

/// Matrix form used by the harness: one sigma per episode computed from
/// the whole clean matrix, noise drawn column by column.
Matrix add_white_noise(const Matrix &gamma, double snr_db, Rng &rng);

} // namespace gkv

#endif // GKV_NOISE_HPP
