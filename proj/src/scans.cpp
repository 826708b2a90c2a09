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

#include "darkpath/scans.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "darkpath/optimize.hpp"
#include "darkpath/parallel.hpp"

namespace darkpath {

namespace {

void require_grid(std::span<const double> values, const char* name) {
  if (values.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " grid has non-finite values");
  }
}

std::vector<ProtocolSpec> minimal_time_specs(const ProtocolSpec& tmpl,
                                             std::span<const double> amplitudes, int jobs) {
  std::vector<ProtocolSpec> specs(amplitudes.size());
  parallel_for(amplitudes.size(), jobs,
               [&](std::size_t i) { specs[i] = with_minimal_time(tmpl, amplitudes[i]); });
  return specs;
}

template <typename CellFn>
ScanGrid run_grid(const ProtocolSpec& tmpl, std::span<const double> amplitudes,
                  std::span<const double> ys, std::string y_name, const ScanOptions& options,
                  CellFn&& cell) {
  require_grid(amplitudes, "amplitude");
  require_grid(ys, y_name.c_str());
  const std::vector<ProtocolSpec> specs = minimal_time_specs(tmpl, amplitudes, options.jobs);

  ScanGrid grid;
  grid.x_name = "A";
  grid.y_name = std::move(y_name);
  grid.x_values.assign(amplitudes.begin(), amplitudes.end());
  grid.y_values.assign(ys.begin(), ys.end());
  const auto nx = static_cast<Eigen::Index>(amplitudes.size());
  const auto ny = static_cast<Eigen::Index>(ys.size());
  grid.fidelity.resize(ny, nx);
  parallel_for(static_cast<std::size_t>(nx * ny), options.jobs, [&](std::size_t idx) {
    const auto row = static_cast<Eigen::Index>(idx) / nx;
    const auto col = static_cast<Eigen::Index>(idx) % nx;
    grid.fidelity(row, col) =
        cell(specs[static_cast<std::size_t>(col)], ys[static_cast<std::size_t>(row)]);
  });
  return grid;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1.0);
  v.back() = hi;
  return v;
}

double cell_fidelity(const ProtocolSpec& spec, const ErrorModel& error, const NoiseModel& noise,
                     int steps) {
  const double f =
      noise.is_noiseless()
          ? propagate_schrodinger(spec, error, initial_state(spec), steps, steps).final_fidelity
          : propagate_lindblad(spec, error, noise, pure_density(initial_state(spec)), steps, steps)
                .final_fidelity;
  // round-off can leave a noiseless cell a few ulp above 1
  return std::clamp(f, 0.0, 1.0);
}

double baseline_fidelity(const ProtocolSpec& spec, int steps) {
  return cell_fidelity(spec, {}, NoiseModel::none(spec.n_qubits), steps);
}

ScanGrid scan_x_error(const ProtocolSpec& tmpl, std::span<const double> amplitudes,
                      std::span<const double> epsilons, const ScanOptions& options) {
  const NoiseModel quiet = NoiseModel::none(tmpl.n_qubits);
  return run_grid(tmpl, amplitudes, epsilons, "epsilon", options,
                  [&](const ProtocolSpec& spec, double eps) {
                    return cell_fidelity(spec, {eps, 0.0}, quiet, options.steps);
                  });
}

ScanGrid scan_z_error(const ProtocolSpec& tmpl, std::span<const double> amplitudes,
                      std::span<const double> deltas, const ScanOptions& options) {
  const NoiseModel quiet = NoiseModel::none(tmpl.n_qubits);
  return run_grid(tmpl, amplitudes, deltas, "delta", options,
                  [&](const ProtocolSpec& spec, double delta) {
                    return cell_fidelity(spec, {0.0, delta}, quiet, options.steps);
                  });
}

ScanGrid scan_decoherence(const ProtocolSpec& tmpl, std::span<const double> amplitudes,
                          std::span<const double> rates, DecoherenceMode mode, double bus_rate,
                          const ScanOptions& options) {
  for (double r : rates) {
    if (r < 0.0) throw std::invalid_argument("decoherence rates must be non-negative");
  }
  if (mode == DecoherenceMode::kBusFixed && !(bus_rate >= 0.0)) {
    throw std::invalid_argument("bus rate must be non-negative");
  }
  const int n = tmpl.n_qubits;
  return run_grid(tmpl, amplitudes, rates, "gamma", options,
                  [&](const ProtocolSpec& spec, double rate) {
                    const NoiseModel noise = mode == DecoherenceMode::kUniform
                                                 ? NoiseModel::uniform(n, rate)
                                                 : NoiseModel::bus_fixed(n, rate, bus_rate);
                    return cell_fidelity(spec, {}, noise, options.steps);
                  });
}

std::vector<SweepRow> sweep_qubit_count(int n_min, int n_max, const SweepOptions& options) {
  if (n_min < 3) throw std::invalid_argument("qubit-count sweep needs N >= 3");
  if (n_max < n_min) throw std::invalid_argument("empty qubit-count range");
  std::vector<SweepRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
  parallel_for(rows.size(), options.jobs, [&](std::size_t i) {
    const int n = n_min + static_cast<int>(i);
    ProtocolSpec tmpl;
    tmpl.kind = ProtocolKind::kQst;
    tmpl.n_qubits = n;
    tmpl.source = 1;
    tmpl.target = 3;
    tmpl.g_max = 1.0;
    const OptimalAmplitude best = optimal_amplitude(tmpl);

    SweepRow row;
    row.n_qubits = n;
    row.amplitude = best.amplitude;
    if (options.physical) {
      TransmonParams params;
      const auto count = static_cast<std::size_t>(n);
      params.omega.assign(count, options.omega);
      params.detuning.assign(count, options.detuning);
      params.modulation.assign(count, options.modulation);
      params.noise = NoiseModel::uniform(n, options.gamma);
      params.steps_per_period = options.steps_per_period;
      ProtocolSpec spec = physical_spec(tmpl, params);
      spec.amplitude = best.amplitude;
      spec.duration = best.peak / spec.g_max;
      PhysicalOptions physical;
      physical.policy = options.policy;
      physical.effective_steps = options.steps;
      physical.record_stride = 1 << 30;
      row.duration = spec.duration;
      row.fidelity = simulate_physical(spec, params, options.model, physical).result.final_fidelity;
    } else {
      ProtocolSpec spec = tmpl;
      spec.amplitude = best.amplitude;
      spec.duration = best.duration;
      row.duration = spec.duration;
      row.fidelity = cell_fidelity(spec, {}, NoiseModel::uniform(n, options.noise_rate), options.steps);
    }
    rows[i] = row;
  });
  return rows;
}

}  // namespace darkpath
