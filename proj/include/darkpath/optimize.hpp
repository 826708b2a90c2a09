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
#include <vector>

#include "darkpath/protocol.hpp"

namespace darkpath {

/// Every coupling scales as 1/T at fixed amplitude: g_j(t) = c_j(t/T) / T.
/// The peak of |c_j| over s in [0, 1] and over qubits is the time-cap product
/// C(A); the shortest duration respecting max |g_j| <= g_max is C(A) / g_max.
struct PeakLocation {
  double value = 0.0;  // C(A)
  double s = 0.0;      // normalized time of the peak
  int branch = 0;      // index into coupling_branches()
};

inline constexpr int kPeakGridPoints = 100000;

/// Peak of the T-independent coupling magnitude for `tmpl` at amplitude A.
/// Only kind, n_qubits, source and target of the template matter.
PeakLocation dimensionless_peak(const ProtocolSpec& tmpl, double amplitude,
                                int grid_points = kPeakGridPoints);

/// Shortest duration that keeps every coupling within tmpl.g_max.
double minimal_duration(const ProtocolSpec& tmpl, double amplitude);

/// Copy of `tmpl` with the given amplitude and its minimal duration.
ProtocolSpec with_minimal_time(const ProtocolSpec& tmpl, double amplitude);

struct TimeCurve {
  std::vector<double> amplitudes;
  std::vector<double> durations;
  std::size_t best_index = 0;
  double best_amplitude = 0.0;
  double best_duration = 0.0;
};

TimeCurve time_curve(const ProtocolSpec& tmpl, std::span<const double> amplitudes, int jobs = 1);

struct AmplitudeBracket {
  double lo = 0.05;
  double hi = 2.0;
  double coarse_step = 0.01;
  double tolerance = 1e-6;
};

struct OptimalAmplitude {
  double amplitude = 0.0;
  double duration = 0.0;
  double peak = 0.0;  // C(A*)
};

/// Coarse scan over the bracket followed by golden-section refinement.
/// Throws std::runtime_error if the coarse minimum sits on the bracket edge.
OptimalAmplitude optimal_amplitude(const ProtocolSpec& tmpl, const AmplitudeBracket& bracket = {},
                                   int jobs = 1);

}  // namespace darkpath
