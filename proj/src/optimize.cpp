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

#include "darkpath/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "darkpath/parallel.hpp"
#include "darkpath/pulse_design.hpp"

namespace darkpath {

namespace {

ProtocolSpec unit_duration(const ProtocolSpec& tmpl, double amplitude) {
  ProtocolSpec spec = tmpl;
  spec.amplitude = amplitude;
  spec.duration = 1.0;
  spec.g_max = 1.0;
  spec.validate();
  return spec;
}

double branch_magnitude(const ProtocolSpec& unit, int branch, double s) {
  return std::abs(coupling_branches(unit, s)[static_cast<std::size_t>(branch)]);
}

}  // namespace

PeakLocation dimensionless_peak(const ProtocolSpec& tmpl, double amplitude, int grid_points) {
  if (grid_points < 3) throw std::invalid_argument("peak grid needs at least 3 points");
  const ProtocolSpec unit = unit_duration(tmpl, amplitude);
  const int branches = static_cast<int>(coupling_branches(unit, 0.5).size());

  std::vector<double> best_value(static_cast<std::size_t>(branches), -1.0);
  std::vector<int> best_index(static_cast<std::size_t>(branches), 0);
  const double h = 1.0 / (grid_points - 1);
  for (int k = 0; k < grid_points; ++k) {
    const double s = k == grid_points - 1 ? 1.0 : k * h;
    const std::vector<double> g = coupling_branches(unit, s);
    for (int b = 0; b < branches; ++b) {
      const double v = std::abs(g[static_cast<std::size_t>(b)]);
      if (!std::isfinite(v)) throw NumericalError("non-finite coupling during peak search");
      if (v > best_value[static_cast<std::size_t>(b)]) {
        best_value[static_cast<std::size_t>(b)] = v;
        best_index[static_cast<std::size_t>(b)] = k;
      }
    }
  }

  PeakLocation peak{-1.0, 0.0, 0};
  for (int b = 0; b < branches; ++b) {
    const int k = best_index[static_cast<std::size_t>(b)];
    double value = best_value[static_cast<std::size_t>(b)];
    double s_best = k * h;
    // One Newton step on the sampled derivative: vertex of the parabola
    // through the three samples around the discrete maximum.
    if (k > 0 && k < grid_points - 1) {
      const double fm = branch_magnitude(unit, b, (k - 1) * h);
      const double f0 = value;
      const double fp = branch_magnitude(unit, b, (k + 1) * h);
      const double curvature = fm - 2.0 * f0 + fp;
      if (curvature < 0.0) {
        const double offset = 0.5 * (fm - fp) / curvature;
        const double s_ref = (k + std::clamp(offset, -1.0, 1.0)) * h;
        const double v_ref = branch_magnitude(unit, b, s_ref);
        if (v_ref > value) {
          value = v_ref;
          s_best = s_ref;
        }
      }
    }
    if (value > peak.value) peak = {value, s_best, b};
  }
  return peak;
}

double minimal_duration(const ProtocolSpec& tmpl, double amplitude) {
  if (!(tmpl.g_max > 0.0)) throw std::invalid_argument("g_max must be positive");
  return dimensionless_peak(tmpl, amplitude).value / tmpl.g_max;
}

ProtocolSpec with_minimal_time(const ProtocolSpec& tmpl, double amplitude) {
  ProtocolSpec spec = tmpl;
  spec.amplitude = amplitude;
  spec.duration = minimal_duration(tmpl, amplitude);
  spec.validate();
  return spec;
}

TimeCurve time_curve(const ProtocolSpec& tmpl, std::span<const double> amplitudes, int jobs) {
  if (amplitudes.empty()) throw std::invalid_argument("amplitude grid is empty");
  for (double a : amplitudes) {
    if (!(a > 0.0) || a > kMaxAmplitude) {
      throw std::invalid_argument("amplitude grid must lie within (0, 5]");
    }
  }
  TimeCurve curve;
  curve.amplitudes.assign(amplitudes.begin(), amplitudes.end());
  curve.durations.resize(amplitudes.size());
  parallel_for(amplitudes.size(), jobs,
               [&](std::size_t i) { curve.durations[i] = minimal_duration(tmpl, amplitudes[i]); });
  for (std::size_t i = 1; i < curve.durations.size(); ++i) {
    if (curve.durations[i] < curve.durations[curve.best_index]) curve.best_index = i;
  }
  curve.best_amplitude = curve.amplitudes[curve.best_index];
  curve.best_duration = curve.durations[curve.best_index];
  return curve;
}

OptimalAmplitude optimal_amplitude(const ProtocolSpec& tmpl, const AmplitudeBracket& bracket,
                                   int jobs) {
  if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo) || !(bracket.coarse_step > 0.0)) {
    throw std::invalid_argument("invalid amplitude bracket");
  }
  const int n = static_cast<int>(std::floor((bracket.hi - bracket.lo) / bracket.coarse_step + 1e-9)) + 1;
  if (n < 3) throw std::invalid_argument("amplitude bracket too narrow for the coarse scan");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = bracket.lo + i * bracket.coarse_step;

  const TimeCurve coarse = time_curve(tmpl, grid, jobs);
  const std::size_t i = coarse.best_index;
  if (i == 0 || i + 1 == grid.size()) {
    throw std::runtime_error("no interior minimum in amplitude bracket [" +
                             std::to_string(bracket.lo) + ", " + std::to_string(bracket.hi) +
                             "]: duration is smallest at the " + (i == 0 ? "lower" : "upper") +
                             " edge");
  }

  auto cost = [&](double a) { return dimensionless_peak(tmpl, a).value; };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid[i - 1];
  double b = grid[i + 1];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = cost(c);
  double fd = cost(d);
  while (b - a > bracket.tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = cost(d);
    }
  }
  OptimalAmplitude best;
  best.amplitude = 0.5 * (a + b);
  best.peak = cost(best.amplitude);
  best.duration = best.peak / tmpl.g_max;
  return best;
}

}  // namespace darkpath
