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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "darkpath/dynamics.hpp"
#include "darkpath/optimize.hpp"
#include "darkpath/pulse_design.hpp"
#include "darkpath/scans.hpp"
#include "darkpath/transmon.hpp"

namespace darkpath::io {

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double value);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// `t,g_1,...,g_N`. Times are divided by time_unit and couplings by coupling_unit.
void write_schedule_csv(const std::filesystem::path& path, const PulseSchedule& schedule,
                        double time_unit = 1.0, double coupling_unit = 1.0);

/// `t,pop_G,pop_1..pop_N,pop_a,fidelity`.
void write_trajectory_csv(const std::filesystem::path& path, const SimulationResult& result);

/// `A,<column names...>`, one duration column per curve; all curves share the amplitude grid.
void write_time_curves_csv(const std::filesystem::path& path,
                           const std::vector<std::string>& columns,
                           const std::vector<TimeCurve>& curves);

/// First row: empty corner then x values; then one row per y value.
void write_heatmap_csv(const std::filesystem::path& path, const ScanGrid& grid);

/// `t_ns,eta_1..eta_N,phase_flag_1..phase_flag_N`.
void write_waveform_csv(const std::filesystem::path& path, const DriveWaveform& waveform);

/// `N,A,T,fidelity`.
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

}  // namespace darkpath::io
