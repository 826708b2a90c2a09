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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "darkpath/dynamics.hpp"
#include "darkpath/model.hpp"
#include "darkpath/protocol.hpp"
#include "darkpath/transmon.hpp"

namespace darkpath {

/// Fidelity heatmap. Columns follow x_values, rows follow y_values.
struct ScanGrid {
  std::string x_name;
  std::string y_name;
  std::vector<double> x_values;
  std::vector<double> y_values;
  Eigen::MatrixXd fidelity;
};

struct ScanOptions {
  int steps = kDefaultSteps;
  int jobs = 1;
};

enum class DecoherenceMode {
  kUniform,  ///< all four rate families follow the grid
  kBusFixed,  ///< bus rates pinned, qubit rates follow the grid
};

/// n evenly spaced values from lo to hi inclusive (n == 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, int n);

/// Final fidelity of one configuration. Noiseless runs use the Schrodinger
/// propagator, noisy ones the master equation. Clamped to [0, 1].
double cell_fidelity(const ProtocolSpec& spec, const ErrorModel& error, const NoiseModel& noise,
                     int steps = kDefaultSteps);

/// Noiseless, error-free fidelity of `spec`.
double baseline_fidelity(const ProtocolSpec& spec, int steps = kDefaultSteps);

/// Amplitude error (1 + epsilon) H. Each column runs at the minimal duration for its A.
ScanGrid scan_x_error(const ProtocolSpec& tmpl, std::span<const double> amplitudes,
                      std::span<const double> epsilons, const ScanOptions& options = {});

/// Qubit frequency drift H + delta sum_j |j><j|.
ScanGrid scan_z_error(const ProtocolSpec& tmpl, std::span<const double> amplitudes,
                      std::span<const double> deltas, const ScanOptions& options = {});

/// Decoherence sweep. `bus_rate` only matters for kBusFixed.
ScanGrid scan_decoherence(const ProtocolSpec& tmpl, std::span<const double> amplitudes,
                          std::span<const double> rates, DecoherenceMode mode, double bus_rate,
                          const ScanOptions& options = {});

struct SweepRow {
  int n_qubits = 0;
  double amplitude = 0.0;
  double duration = 0.0;
  double fidelity = 0.0;
};

struct SweepOptions {
  bool physical = true;
  // dimensionless runs (g_max = 1)
  int steps = kDefaultSteps;
  double noise_rate = 1.0 / 2000.0;
  // physical runs, same value for every qubit
  double omega = mhz(17.0);
  double detuning = mhz(800.0);
  double modulation = mhz(800.0);
  double gamma = khz(5.0);
  int steps_per_period = 400;
  PhysicalModel model = PhysicalModel::kFull;
  DrivePolicy policy = DrivePolicy::kStrict;
  int jobs = 1;
};

/// QST from qubit 1 to qubit 3 for every N in [n_min, n_max], each at its
/// own minimal-time amplitude. Throws for n_min < 3.
std::vector<SweepRow> sweep_qubit_count(int n_min, int n_max, const SweepOptions& options = {});

}  // namespace darkpath
