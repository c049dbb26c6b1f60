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

#include "gkv/sweep_io.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "gkv/errors.hpp"

namespace gkv {

namespace {

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  return out;
}

bool has_r_column(const SweepResult &result) {
  for (const auto &point : result.points)
    if (point.r)
      return true;
  return false;
}

} // namespace

void write_sweep_csv(const SweepResult &result, std::ostream &out) {
  const bool grid = has_r_column(result);
  out << (grid ? "axis,r,mean_accuracy,std_error,episodes\n"
               : "axis,mean_accuracy,std_error,episodes\n");
  for (const auto &point : result.points) {
    out << format_double(point.axis) << ',';
    if (grid)
      out << format_double(point.r.value_or(0.0)) << ',';
    out << format_double(point.mean_accuracy) << ','
        << format_double(point.std_error) << ',' << point.episodes << '\n';
  }
}

void write_sweep_csv(const SweepResult &result, const std::string &path) {
  auto out = open_out(path);
  write_sweep_csv(result, out);
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

void write_sweep_json(const SweepResult &result, std::ostream &out) {
  nlohmann::ordered_json doc;
  doc["axis"] = result.axis_name;
  doc["points"] = nlohmann::ordered_json::array();
  for (const auto &point : result.points) {
    nlohmann::ordered_json row;
    row["axis"] = point.axis;
    if (point.r)
      row["r"] = *point.r;
    row["mean_accuracy"] = point.mean_accuracy;
    row["std_error"] = point.std_error;
    row["episodes"] = point.episodes;
    doc["points"].push_back(row);
  }
  out << doc.dump(2) << '\n';
}

void write_sweep_json(const SweepResult &result, const std::string &path) {
  auto out = open_out(path);
  write_sweep_json(result, out);
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

namespace {

void write_iso_row(const IsoRResult &row, std::ostream &out) {
  out << format_double(row.variation) << ',';
  if (row.reached)
    out << row.r;
  else
    out << "unreached";
  out << ',' << format_double(row.baseline_accuracy) << ','
      << format_double(row.achieved_accuracy) << ',' << row.episodes << '\n';
}

} // namespace

void write_iso_csv(const std::vector<IsoRResult> &rows, std::ostream &out) {
  out << "variation,iso_r,baseline_accuracy,achieved_accuracy,episodes\n";
  for (const auto &row : rows)
    write_iso_row(row, out);
}

void write_iso_csv(const std::vector<IsoRResult> &rows,
                   const std::string &path) {
  auto out = open_out(path);
  write_iso_csv(rows, out);
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

void write_scaling_csv(const std::vector<ScalingRow> &rows,
                       std::ostream &out) {
  out << "m,n,variation,iso_r,baseline_accuracy,achieved_accuracy,episodes\n";
  for (const auto &row : rows) {
    out << row.m << ',' << row.n << ',';
    write_iso_row(row.iso, out);
  }
}

void write_scaling_csv(const std::vector<ScalingRow> &rows,
                       const std::string &path) {
  auto out = open_out(path);
  write_scaling_csv(rows, out);
  if (!out)
    throw IoError("failed writing '" + path + "'");
}

} // namespace gkv
