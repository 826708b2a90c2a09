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

#include <Eigen/Dense>

#include "darkpath/protocol.hpp"

namespace darkpath {

/// Auxiliary angles and their time derivatives at one instant.
///
/// Two-qubit protocols use all three angles. The all-qubit protocol only uses
/// gamma1 and gamma2 (its gamma2 plays the role of the mixing polynomial) and
/// leaves gamma3 at zero.
struct GammaPoint {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double dgamma1 = 0.0;
  double dgamma2 = 0.0;
  double dgamma3 = 0.0;
};

GammaPoint gamma_two_qubit(const ProtocolSpec& spec, double t);
GammaPoint gamma_all_qubit(const ProtocolSpec& spec, double t);

/// Analytic dark-pathway state of dimension N + 2 at time t.
Eigen::VectorXcd dark_state(const ProtocolSpec& spec, double t);
/// d/dt of dark_state by the chain rule through the auxiliary angles.
Eigen::VectorXcd dark_state_derivative(const ProtocolSpec& spec, double t);

struct TwoQubitCouplings {
  double source = 0.0;
  double target = 0.0;
  double idle = 0.0;  // zero when there is no idle qubit
};

struct AllQubitCouplings {
  double source = 0.0;
  double other = 0.0;
};

TwoQubitCouplings couplings_two_qubit(const ProtocolSpec& spec, double t);
AllQubitCouplings couplings_all_qubit(const ProtocolSpec& spec, double t);

/// g_j(t) for j = 1..N, stored at index j - 1.
Eigen::VectorXd coupling_vector(const ProtocolSpec& spec, double t);

/// Distinct coupling waveforms at time t: {source, target, idle} for
/// two-qubit protocols (idle omitted without idle qubits), {source, other}
/// for the all-qubit protocol.
std::vector<double> coupling_branches(const ProtocolSpec& spec, double t);

/// Uniformly sampled coupling waveforms.
struct PulseSchedule {
  ProtocolSpec spec;
  std::vector<double> times;
  Eigen::MatrixXd couplings;  // rows: samples, columns: qubits
  double peak_coupling = 0.0;  // max_j,t |g_j(t)|

  bool within_cap(double relative_tolerance = 1e-6) const {
    return peak_coupling <= spec.g_max * (1.0 + relative_tolerance);
  }
};

inline constexpr int kDefaultSamples = 2001;

PulseSchedule synthesize(const ProtocolSpec& spec, int n_samples = kDefaultSamples);

struct PathwayReport {
  double max_norm_error = 0.0;          // max |<psi|psi> - 1|
  double max_energy_expectation = 0.0;  // max |<psi|H|psi>|
  double max_schrodinger_residual = 0.0;  // max ||i dpsi/dt - H psi||
};

PathwayReport verify_pathway(const ProtocolSpec& spec, std::span<const double> grid);

/// n points from t0 to t1 inclusive.
std::vector<double> uniform_grid(double t0, double t1, int n);

}  // namespace darkpath
