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

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "darkpath/model.hpp"
#include "darkpath/protocol.hpp"

namespace darkpath {

using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;
using HamiltonianFn = std::function<Eigen::MatrixXcd(double)>;
using ReferenceFn = std::function<StateVector(double)>;

inline constexpr int kDefaultSteps = 4001;
inline constexpr int kMinSteps = 100;
/// A Lindblad run aborts once |Tr rho - 1| exceeds this.
inline constexpr double kTraceAbortThreshold = 1e-6;

struct Diagnostics {
  double max_trace_deviation = 0.0;
  double max_hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;  // smallest eigenvalue seen at recorded times
  double max_norm_deviation = 0.0;
  double max_population_sum = 0.0;
  /// max over steps of 1 - overlap with the reference state; zero without a reference.
  double max_reference_infidelity = 0.0;
};

struct SimulationResult {
  std::vector<double> times;
  Eigen::MatrixXd populations;  // rows: recorded times, columns: basis states
  std::vector<double> fidelity;  // against the target at each recorded time
  double final_fidelity = 0.0;
  Diagnostics diagnostics;
  StateVector final_state;  // Schrodinger runs only
  DensityMatrix final_density;
};

/// <target|rho|target>. Throws if dimensions differ or the result is not real.
double fidelity(const DensityMatrix& rho, const StateVector& target);
/// |<a|b>|^2, insensitive to global phase.
double state_fidelity(const StateVector& a, const StateVector& b);

DensityMatrix pure_density(const StateVector& psi);
/// |source>, the excitation the protocols start from.
StateVector initial_state(const ProtocolSpec& spec);
/// The dark state at t = T, used as the fidelity target.
StateVector target_state(const ProtocolSpec& spec);

/// Lindblad dissipator sum_k r_k (D rho D^dag - {D^dag D, rho} / 2), compiled
/// for the sparse operators of the restricted basis.
class Dissipator {
 public:
  Dissipator() = default;
  Dissipator(const std::vector<CollapseOperator>& ops, int dim);

  bool empty() const { return empty_; }
  /// out += D(rho)
  void accumulate(const DensityMatrix& rho, DensityMatrix& out) const;

 private:
  struct Entry {
    int row;
    int col;
    double value;
  };
  struct Jump {
    double rate;
    std::vector<Entry> entries;
  };

  bool empty_ = true;
  Eigen::MatrixXd weights_;  // elementwise part: diagonal jumps and diagonal D^dag D
  std::vector<Jump> jumps_;  // sandwich terms of off-diagonal operators
  Eigen::MatrixXcd anticommutator_;  // non-diagonal remainder of sum r D^dag D
  bool has_anticommutator_ = false;
};

/// Fixed-step RK4 on i dpsi/dt = H(t) psi over [0, t_end].
SimulationResult integrate_schrodinger(const HamiltonianFn& h, const StateVector& psi0,
                                       const StateVector& target, double t_end, int steps,
                                       int record_stride = 1, const ReferenceFn& reference = {});

/// Fixed-step RK4 on drho/dt = i[rho, H] + D(rho) over [0, t_end].
/// Throws NumericalError when the trace drifts past kTraceAbortThreshold.
SimulationResult integrate_lindblad(const HamiltonianFn& h, const Dissipator& dissipator,
                                    const DensityMatrix& rho0, const StateVector& target,
                                    double t_end, int steps, int record_stride = 1);

/// Protocol dynamics under the designed couplings and static errors. The
/// reference for the tracking diagnostic is the analytic dark pathway.
SimulationResult propagate_schrodinger(const ProtocolSpec& spec, const ErrorModel& error,
                                       const StateVector& psi0, int steps = kDefaultSteps,
                                       int record_stride = 1);

SimulationResult propagate_lindblad(const ProtocolSpec& spec, const ErrorModel& error,
                                    const NoiseModel& noise, const DensityMatrix& rho0,
                                    int steps = kDefaultSteps, int record_stride = 1);

/// Throws std::invalid_argument unless rho is a square, Hermitian, unit-trace matrix of size dim.
void validate_density(const DensityMatrix& rho, int dim);

}  // namespace darkpath
