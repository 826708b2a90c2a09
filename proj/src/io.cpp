// Copyright 2026 The darkpath Authors
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

#include "darkpath/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace darkpath::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_row(std::ofstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_for_write(path);
  write_row(out, header);
  std::vector<std::string> cells;
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("csv row width mismatch");
    cells.clear();
    for (double v : row) cells.push_back(format_double(v));
    write_row(out, cells);
  }
}

void write_schedule_csv(const std::filesystem::path& path, const PulseSchedule& schedule,
                        double time_unit, double coupling_unit) {
  std::vector<std::string> header{"t"};
  for (int j = 1; j <= schedule.spec.n_qubits; ++j) header.push_back("g_" + std::to_string(j));
  std::vector<std::vector<double>> rows;
  rows.reserve(schedule.times.size());
  for (std::size_t k = 0; k < schedule.times.size(); ++k) {
    std::vector<double> row{schedule.times[k] / time_unit};
    for (Eigen::Index j = 0; j < schedule.couplings.cols(); ++j) {
      row.push_back(schedule.couplings(static_cast<Eigen::Index>(k), j) / coupling_unit);
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_trajectory_csv(const std::filesystem::path& path, const SimulationResult& result) {
  const auto dim = result.populations.cols();
  std::vector<std::string> header{"t", "pop_G"};
  for (Eigen::Index j = 1; j + 1 < dim; ++j) header.push_back("pop_" + std::to_string(j));
  header.push_back("pop_a");
  header.push_back("fidelity");
  std::vector<std::vector<double>> rows;
  rows.reserve(result.times.size());
  for (std::size_t k = 0; k < result.times.size(); ++k) {
    std::vector<double> row{result.times[k]};
    for (Eigen::Index j = 0; j < dim; ++j) {
      row.push_back(result.populations(static_cast<Eigen::Index>(k), j));
    }
    row.push_back(result.fidelity[k]);
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_time_curves_csv(const std::filesystem::path& path,
                           const std::vector<std::string>& columns,
                           const std::vector<TimeCurve>& curves) {
  if (columns.size() != curves.size() || curves.empty()) {
    throw std::invalid_argument("one column name per time curve required");
  }
  std::vector<std::string> header{"A"};
  header.insert(header.end(), columns.begin(), columns.end());
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < curves.front().amplitudes.size(); ++i) {
    std::vector<double> row{curves.front().amplitudes[i]};
    for (const TimeCurve& c : curves) row.push_back(c.durations.at(i));
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_heatmap_csv(const std::filesystem::path& path, const ScanGrid& grid) {
  std::ofstream out = open_for_write(path);
  std::vector<std::string> cells{grid.y_name + "\\" + grid.x_name};
  for (double x : grid.x_values) cells.push_back(format_double(x));
  write_row(out, cells);
  for (std::size_t r = 0; r < grid.y_values.size(); ++r) {
    cells.assign(1, format_double(grid.y_values[r]));
    for (std::size_t c = 0; c < grid.x_values.size(); ++c) {
      cells.push_back(format_double(
          grid.fidelity(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
    }
    write_row(out, cells);
  }
}

void write_waveform_csv(const std::filesystem::path& path, const DriveWaveform& waveform) {
  const auto n = waveform.eta.cols();
  std::vector<std::string> header{"t_ns"};
  for (Eigen::Index j = 1; j <= n; ++j) header.push_back("eta_" + std::to_string(j));
  for (Eigen::Index j = 1; j <= n; ++j) header.push_back("phase_flag_" + std::to_string(j));
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < waveform.times.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    std::vector<double> row{waveform.times[k]};
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(waveform.eta(kk, j));
    for (Eigen::Index j = 0; j < n; ++j) row.push_back(waveform.phase_flag(kk, j));
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::vector<std::vector<double>> out;
  for (const SweepRow& r : rows) {
    out.push_back({static_cast<double>(r.n_qubits), r.amplitude, r.duration, r.fidelity});
  }
  write_csv(path, {"N", "A", "T", "fidelity"}, out);
}

}  // namespace darkpath::io
