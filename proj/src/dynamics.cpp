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

#include "darkpath/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "darkpath/pulse_design.hpp"

namespace darkpath {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

double hermiticity_deviation(const DensityMatrix& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double trace_deviation(const DensityMatrix& rho) { return std::abs(rho.trace() - 1.0); }

void check_steps(int steps) {
  if (steps < kMinSteps) {
    throw std::invalid_argument("at least " + std::to_string(kMinSteps) +
                                " integration steps are required, got " + std::to_string(steps));
  }
}

double step_time(double t_end, int k, int steps) {
  return k == steps ? t_end : t_end * static_cast<double>(k) / steps;
}

bool should_record(int k, int steps, int stride) { return k % stride == 0 || k == steps; }

}  // namespace

double fidelity(const DensityMatrix& rho, const StateVector& target) {
  if (rho.rows() != target.size() || rho.cols() != target.size()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const cd f = target.dot(rho * target);
  if (std::abs(f.imag()) > 1e-10) {
    throw NumericalError("fidelity has an imaginary part of " + std::to_string(f.imag()));
  }
  return f.real();
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  return std::norm(a.dot(b));
}

DensityMatrix pure_density(const StateVector& psi) { return psi * psi.adjoint(); }

StateVector initial_state(const ProtocolSpec& spec) {
  StateVector psi = StateVector::Zero(spec.n_qubits + 2);
  psi(spec.source) = 1.0;
  return psi;
}

StateVector target_state(const ProtocolSpec& spec) { return dark_state(spec, spec.duration); }

void validate_density(const DensityMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("density matrix has the wrong dimension");
  }
  if (hermiticity_deviation(rho) > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (trace_deviation(rho) > 1e-8) throw std::invalid_argument("density matrix trace is not 1");
}

Dissipator::Dissipator(const std::vector<CollapseOperator>& ops, int dim)
    : weights_(Eigen::MatrixXd::Zero(dim, dim)),
      anticommutator_(Eigen::MatrixXcd::Zero(dim, dim)) {
  Eigen::MatrixXd k_sum = Eigen::MatrixXd::Zero(dim, dim);
  for (const CollapseOperator& c : ops) {
    if (c.op.rows() != dim || c.op.cols() != dim) {
      throw std::invalid_argument("collapse operator " + c.label + " has the wrong dimension");
    }
    if (c.rate == 0.0) continue;
    empty_ = false;
    const Eigen::MatrixXd& d = c.op;
    const bool diagonal = (d - Eigen::MatrixXd(d.diagonal().asDiagonal())).isZero(0.0);
    if (diagonal) {
      // D rho D^dag - {D^dag D, rho}/2 acts entrywise: z_i z_j - (z_i^2 + z_j^2)/2.
      const Eigen::VectorXd z = d.diagonal();
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          weights_(i, j) += c.rate * (z(i) * z(j) - 0.5 * (z(i) * z(i) + z(j) * z(j)));
        }
      }
      continue;
    }
    Jump jump{c.rate, {}};
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (d(i, j) != 0.0) jump.entries.push_back({i, j, d(i, j)});
      }
    }
    jumps_.push_back(std::move(jump));
    k_sum += c.rate * d.transpose() * d;
  }
  const Eigen::VectorXd k_diag = k_sum.diagonal();
  const Eigen::MatrixXd k_off = k_sum - Eigen::MatrixXd(k_diag.asDiagonal());
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) weights_(i, j) -= 0.5 * (k_diag(i) + k_diag(j));
  }
  if (!k_off.isZero(0.0)) {
    has_anticommutator_ = true;
    anticommutator_ = k_off.cast<cd>();
  }
}

void Dissipator::accumulate(const DensityMatrix& rho, DensityMatrix& out) const {
  if (empty_) return;
  out.array() += weights_.array().cast<cd>() * rho.array();
  for (const Jump& jump : jumps_) {
    for (const Entry& a : jump.entries) {
      for (const Entry& b : jump.entries) {
        out(a.row, b.row) += jump.rate * a.value * b.value * rho(a.col, b.col);
      }
    }
  }
  if (has_anticommutator_) out.noalias() -= 0.5 * (anticommutator_ * rho + rho * anticommutator_);
}

SimulationResult integrate_schrodinger(const HamiltonianFn& h, const StateVector& psi0,
                                       const StateVector& target, double t_end, int steps,
                                       int record_stride, const ReferenceFn& reference) {
  check_steps(steps);
  if (record_stride < 1) throw std::invalid_argument("record stride must be positive");
  if (psi0.size() != target.size()) throw std::invalid_argument("state/target dimension mismatch");

  const int dim = static_cast<int>(psi0.size());
  SimulationResult result;
  std::vector<Eigen::VectorXd> rows;
  StateVector psi = psi0;

  auto record = [&](double t) {
    const Eigen::VectorXd pops = psi.cwiseAbs2();
    const double norm_dev = std::abs(psi.squaredNorm() - 1.0);
    auto& d = result.diagnostics;
    d.max_norm_deviation = std::max(d.max_norm_deviation, norm_dev);
    d.max_population_sum = std::max(d.max_population_sum, pops.sum());
    result.times.push_back(t);
    rows.push_back(pops);
    result.fidelity.push_back(state_fidelity(target, psi));
  };
  auto track = [&](double t) {
    if (!reference) return;
    const double inf = 1.0 - state_fidelity(reference(t), psi);
    result.diagnostics.max_reference_infidelity =
        std::max(result.diagnostics.max_reference_infidelity, inf);
  };

  record(0.0);
  track(0.0);
  const double dt = t_end / steps;
  for (int k = 0; k < steps; ++k) {
    const double t0 = step_time(t_end, k, steps);
    const double t1 = step_time(t_end, k + 1, steps);
    const double tm = 0.5 * (t0 + t1);
    const Eigen::MatrixXcd h0 = h(t0);
    const Eigen::MatrixXcd hm = h(tm);
    const Eigen::MatrixXcd h1 = h(t1);
    const StateVector k1 = -kI * (h0 * psi);
    const StateVector k2 = -kI * (hm * (psi + 0.5 * dt * k1));
    const StateVector k3 = -kI * (hm * (psi + 0.5 * dt * k2));
    const StateVector k4 = -kI * (h1 * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    track(t1);
    if (should_record(k + 1, steps, record_stride)) record(t1);
  }

  result.populations.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    result.populations.row(static_cast<Eigen::Index>(r)) = rows[r];
  }
  result.final_fidelity = state_fidelity(target, psi);
  result.final_state = psi;
  result.final_density = pure_density(psi);
  return result;
}

SimulationResult integrate_lindblad(const HamiltonianFn& h, const Dissipator& dissipator,
                                    const DensityMatrix& rho0, const StateVector& target,
                                    double t_end, int steps, int record_stride) {
  check_steps(steps);
  if (record_stride < 1) throw std::invalid_argument("record stride must be positive");
  const int dim = static_cast<int>(rho0.rows());
  validate_density(rho0, dim);
  if (target.size() != dim) throw std::invalid_argument("state/target dimension mismatch");

  SimulationResult result;
  result.diagnostics.min_eigenvalue = 1.0;
  std::vector<Eigen::VectorXd> rows;
  DensityMatrix rho = rho0;

  auto rhs = [&](const Eigen::MatrixXcd& hh, const DensityMatrix& r) {
    DensityMatrix out = kI * (r * hh - hh * r);
    dissipator.accumulate(r, out);
    return out;
  };
  auto record = [&](double t) {
    const Eigen::VectorXd pops = rho.diagonal().real();
    auto& d = result.diagnostics;
    d.max_population_sum = std::max(d.max_population_sum, pops.sum());
    const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = std::min(d.min_eigenvalue, eig.eigenvalues().minCoeff());
    result.times.push_back(t);
    rows.push_back(pops);
    result.fidelity.push_back(target.dot(rho * target).real());
  };
  auto monitor = [&](double t) {
    auto& d = result.diagnostics;
    const double tr = trace_deviation(rho);
    d.max_trace_deviation = std::max(d.max_trace_deviation, tr);
    d.max_hermiticity_deviation = std::max(d.max_hermiticity_deviation, hermiticity_deviation(rho));
    if (!(tr <= kTraceAbortThreshold)) {
      throw NumericalError("trace deviation " + std::to_string(tr) + " at t=" +
                           std::to_string(t) + "; increase the number of steps");
    }
  };

  monitor(0.0);
  record(0.0);
  const double dt = t_end / steps;
  for (int k = 0; k < steps; ++k) {
    const double t0 = step_time(t_end, k, steps);
    const double t1 = step_time(t_end, k + 1, steps);
    const double tm = 0.5 * (t0 + t1);
    const Eigen::MatrixXcd h0 = h(t0);
    const Eigen::MatrixXcd hm = h(tm);
    const Eigen::MatrixXcd h1 = h(t1);
    const DensityMatrix k1 = rhs(h0, rho);
    const DensityMatrix k2 = rhs(hm, rho + 0.5 * dt * k1);
    const DensityMatrix k3 = rhs(hm, rho + 0.5 * dt * k2);
    const DensityMatrix k4 = rhs(h1, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    monitor(t1);
    if (should_record(k + 1, steps, record_stride)) record(t1);
  }

  result.populations.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    result.populations.row(static_cast<Eigen::Index>(r)) = rows[r];
  }
  result.final_fidelity = fidelity(rho, target);
  result.final_density = rho;
  return result;
}

SimulationResult propagate_schrodinger(const ProtocolSpec& spec, const ErrorModel& error,
                                       const StateVector& psi0, int steps, int record_stride) {
  spec.validate();
  check_steps(steps);
  if (psi0.size() != spec.n_qubits + 2) throw std::invalid_argument("psi0 has the wrong dimension");
  auto h = [&](double t) { return hamiltonian(coupling_vector(spec, t), error); };
  auto reference = [&](double t) { return dark_state(spec, t); };
  return integrate_schrodinger(h, psi0, target_state(spec), spec.duration, steps, record_stride,
                               reference);
}

SimulationResult propagate_lindblad(const ProtocolSpec& spec, const ErrorModel& error,
                                    const NoiseModel& noise, const DensityMatrix& rho0, int steps,
                                    int record_stride) {
  spec.validate();
  check_steps(steps);
  const Basis basis(spec.n_qubits);
  const Dissipator dissipator(collapse_operators(noise, basis), basis.dim());
  auto h = [&](double t) { return hamiltonian(coupling_vector(spec, t), error); };
  return integrate_lindblad(h, dissipator, rho0, target_state(spec), spec.duration, steps,
                            record_stride);
}

}  // namespace darkpath
