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

#ifndef GKV_SWEEP_IO_HPP
#define GKV_SWEEP_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gkv/format.hpp"
#include "gkv/harness.hpp"

namespace gkv {

/// CSV columns "axis,mean_accuracy,std_error,episodes"; grid sweeps insert
/// an "r" column after the axis.
void write_sweep_csv(const SweepResult &result, std::ostream &out);
void write_sweep_csv(const SweepResult &result, const std::string &path);

void write_sweep_json(const SweepResult &result, std::ostream &out);
void write_sweep_json(const SweepResult &result, const std::string &path);

/// CSV columns "variation,iso_r,baseline_accuracy,achieved_accuracy,
/// episodes"; iso_r reads "unreached" when r_max did not attain the
/// baseline. Scaling tables prepend "m,n".
void write_iso_csv(const std::vector<IsoRResult> &rows, std::ostream &out);
void write_iso_csv(const std::vector<IsoRResult> &rows,
                   const std::string &path);
void write_scaling_csv(const std::vector<ScalingRow> &rows,
                       std::ostream &out);
void write_scaling_csv(const std::vector<ScalingRow> &rows,
                       const std::string &path);

} // namespace gkv

#endif // GKV_SWEEP_IO_HPP
