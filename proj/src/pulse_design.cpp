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

#include "darkpath/pulse_design.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "darkpath/model.hpp"

namespace darkpath {

namespace {

using cd = std::complex<double>;

// Below this value of gamma1, cot(gamma1) is replaced by its Laurent series.
constexpr double kCotSeriesThreshold = 1e-6;

// gamma1 = 16 A u^2 with u = s (1 - s), s = t / T. It peaks at A when s = 1/2.
struct Envelope {
  double s = 0.0;
  double u = 0.0;
  double gamma1 = 0.0;
  double dgamma1 = 0.0;
};

Envelope envelope(const ProtocolSpec& spec, double t) {
  const double T = spec.duration;
  const double slack = 1e-12 * T;
  if (!(t >= -slack && t <= T + slack)) {
    throw std::domain_error("time " + std::to_string(t) + " outside [0, " + std::to_string(T) +
                            "]");
  }
  Envelope e;
  e.s = std::clamp(t / T, 0.0, 1.0);
  e.u = e.s * (1.0 - e.s);
  e.gamma1 = 16.0 * spec.amplitude * e.u * e.u;
  e.dgamma1 = 32.0 * spec.amplitude * e.u * (1.0 - 2.0 * e.s) / T;
  return e;
}

// theta * (35 s^4 - 84 s^5 + 70 s^6 - 20 s^7): zero slope at both ends.
double mixing_angle(double theta, double s) {
  const double s2 = s * s;
  return theta * s2 * s2 * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)));
}

// Derivative of mixing_angle in factored form, 140 theta u^3 / T.
double mixing_rate(double theta, double u, double T) { return 140.0 * theta * u * u * u / T; }

// mixing_rate * cot(gamma1). Both vanish at the endpoints; the ratio goes to
// zero like u, so near the ends use gamma1 cot gamma1 = 1 - x^2/3 - x^4/45.
double mixing_rate_cot(const ProtocolSpec& spec, double theta, const Envelope& e) {
  const double g = e.gamma1;
  if (g < kCotSeriesThreshold) {
    const double g2 = g * g;
    const double x_cot_x = 1.0 - g2 / 3.0 - g2 * g2 / 45.0;
    return 140.0 * theta * e.u / (16.0 * spec.amplitude * spec.duration) * x_cot_x;
  }
  const double value = mixing_rate(theta, e.u, spec.duration) * std::cos(g) / std::sin(g);
  if (!std::isfinite(value)) {
    throw NumericalError("cot(gamma1) singular inside the pulse (amplitude too large)");
  }
  return value;
}

void require_two_qubit(const ProtocolSpec& spec) {
  if (spec.kind == ProtocolKind::kAllEsg) {
    throw std::invalid_argument("two-qubit pathway requested for an all-qubit protocol");
  }
}

void require_all_qubit(const ProtocolSpec& spec) {
  if (spec.kind != ProtocolKind::kAllEsg) {
    throw std::invalid_argument("all-qubit pathway requested for a two-qubit protocol");
  }
}

void check_finite(double v) {
  if (!std::isfinite(v)) throw NumericalError("non-finite coupling value");
}

}  // namespace

GammaPoint gamma_two_qubit(const ProtocolSpec& spec, double t) {
  require_two_qubit(spec);
  const Envelope e = envelope(spec, t);
  const double theta = spec.theta();
  GammaPoint p;
  p.gamma1 = e.gamma1;
  p.dgamma1 = e.dgamma1;
  // Without idle qubits there is nowhere to put the cos(gamma1) sin(gamma2)
  // amplitude, so gamma2 stays at zero.
  if (spec.has_idle_branch()) {
    p.gamma2 = 1.0 - std::cos(e.gamma1);
    p.dgamma2 = std::sin(e.gamma1) * e.dgamma1;
  }
  p.gamma3 = mixing_angle(theta, e.s);
  p.dgamma3 = mixing_rate(theta, e.u, spec.duration);
  return p;
}

GammaPoint gamma_all_qubit(const ProtocolSpec& spec, double t) {
  require_all_qubit(spec);
  const Envelope e = envelope(spec, t);
  const double theta = spec.theta();
  GammaPoint p;
  p.gamma1 = e.gamma1;
  p.dgamma1 = e.dgamma1;
  p.gamma2 = mixing_angle(theta, e.s);
  p.dgamma2 = mixing_rate(theta, e.u, spec.duration);
  return p;
}

Eigen::VectorXcd dark_state(const ProtocolSpec& spec, double t) {
  const int n = spec.n_qubits;
  const Basis basis(n);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.dim());
  if (spec.kind == ProtocolKind::kAllEsg) {
    const GammaPoint p = gamma_all_qubit(spec, t);
    const double c1 = std::cos(p.gamma1);
    const double other = -c1 * std::sin(p.gamma2) / std::sqrt(n - 1.0);
    for (int j = 1; j <= n; ++j) psi(j) = other;
    psi(spec.source) = c1 * std::cos(p.gamma2);
    psi(basis.bus()) = cd(0.0, -std::sin(p.gamma1));
    return psi;
  }
  const GammaPoint p = gamma_two_qubit(spec, t);
  const double c1 = std::cos(p.gamma1);
  const double c2 = std::cos(p.gamma2);
  if (spec.has_idle_branch()) {
    const double idle = -c1 * std::sin(p.gamma2) / std::sqrt(n - 2.0);
    for (int j = 1; j <= n; ++j) psi(j) = idle;
  }
  psi(spec.source) = c1 * c2 * std::cos(p.gamma3);
  psi(spec.target) = -c1 * c2 * std::sin(p.gamma3);
  psi(basis.bus()) = cd(0.0, -std::sin(p.gamma1));
  return psi;
}

Eigen::VectorXcd dark_state_derivative(const ProtocolSpec& spec, double t) {
  const int n = spec.n_qubits;
  const Basis basis(n);
  Eigen::VectorXcd dpsi = Eigen::VectorXcd::Zero(basis.dim());
  if (spec.kind == ProtocolKind::kAllEsg) {
    const GammaPoint p = gamma_all_qubit(spec, t);
    const double c1 = std::cos(p.gamma1), s1 = std::sin(p.gamma1);
    const double c2 = std::cos(p.gamma2), s2 = std::sin(p.gamma2);
    const double other = (s1 * s2 * p.dgamma1 - c1 * c2 * p.dgamma2) / std::sqrt(n - 1.0);
    for (int j = 1; j <= n; ++j) dpsi(j) = other;
    dpsi(spec.source) = -s1 * c2 * p.dgamma1 - c1 * s2 * p.dgamma2;
    dpsi(basis.bus()) = cd(0.0, -c1 * p.dgamma1);
    return dpsi;
  }
  const GammaPoint p = gamma_two_qubit(spec, t);
  const double c1 = std::cos(p.gamma1), s1 = std::sin(p.gamma1);
  const double c2 = std::cos(p.gamma2), s2 = std::sin(p.gamma2);
  const double c3 = std::cos(p.gamma3), s3 = std::sin(p.gamma3);
  if (spec.has_idle_branch()) {
    const double idle = (s1 * s2 * p.dgamma1 - c1 * c2 * p.dgamma2) / std::sqrt(n - 2.0);
    for (int j = 1; j <= n; ++j) dpsi(j) = idle;
  }
  dpsi(spec.source) = -s1 * c2 * c3 * p.dgamma1 - c1 * s2 * c3 * p.dgamma2 -
                      c1 * c2 * s3 * p.dgamma3;
  dpsi(spec.target) = s1 * c2 * s3 * p.dgamma1 + c1 * s2 * s3 * p.dgamma2 -
                      c1 * c2 * c3 * p.dgamma3;
  dpsi(basis.bus()) = cd(0.0, -c1 * p.dgamma1);
  return dpsi;
}

TwoQubitCouplings couplings_two_qubit(const ProtocolSpec& spec, double t) {
  const GammaPoint p = gamma_two_qubit(spec, t);
  const Envelope e = envelope(spec, t);
  const double c2 = std::cos(p.gamma2), s2 = std::sin(p.gamma2);
  const double c3 = std::cos(p.gamma3), s3 = std::sin(p.gamma3);
  // dgamma2 cot(gamma1) = dgamma1 cos(gamma1) because gamma2 = 1 - cos(gamma1).
  const double d2_cot = spec.has_idle_branch() ? p.dgamma1 * std::cos(p.gamma1) : 0.0;
  const double d3_cot = mixing_rate_cot(spec, spec.theta(), e);

  TwoQubitCouplings g;
  g.source = p.dgamma1 * c2 * c3 + d2_cot * s2 * c3 + d3_cot * c2 * s3;
  g.target = d3_cot * c2 * c3 - p.dgamma1 * c2 * s3 - d2_cot * s2 * s3;
  if (spec.has_idle_branch()) {
    g.idle = (d2_cot * c2 - p.dgamma1 * s2) / std::sqrt(spec.n_qubits - 2.0);
  }
  check_finite(g.source);
  check_finite(g.target);
  check_finite(g.idle);
  return g;
}

AllQubitCouplings couplings_all_qubit(const ProtocolSpec& spec, double t) {
  const GammaPoint p = gamma_all_qubit(spec, t);
  const Envelope e = envelope(spec, t);
  const double c2 = std::cos(p.gamma2), s2 = std::sin(p.gamma2);
  const double d2_cot = mixing_rate_cot(spec, spec.theta(), e);

  AllQubitCouplings g;
  g.source = d2_cot * s2 + p.dgamma1 * c2;
  g.other = (d2_cot * c2 - p.dgamma1 * s2) / std::sqrt(spec.n_qubits - 1.0);
  check_finite(g.source);
  check_finite(g.other);
  return g;
}

Eigen::VectorXd coupling_vector(const ProtocolSpec& spec, double t) {
  Eigen::VectorXd g(spec.n_qubits);
  if (spec.kind == ProtocolKind::kAllEsg) {
    const AllQubitCouplings c = couplings_all_qubit(spec, t);
    g.setConstant(c.other);
    g(spec.source - 1) = c.source;
    return g;
  }
  const TwoQubitCouplings c = couplings_two_qubit(spec, t);
  g.setConstant(c.idle);
  g(spec.source - 1) = c.source;
  g(spec.target - 1) = c.target;
  return g;
}

std::vector<double> coupling_branches(const ProtocolSpec& spec, double t) {
  if (spec.kind == ProtocolKind::kAllEsg) {
    const AllQubitCouplings c = couplings_all_qubit(spec, t);
    return {c.source, c.other};
  }
  const TwoQubitCouplings c = couplings_two_qubit(spec, t);
  if (spec.has_idle_branch()) return {c.source, c.target, c.idle};
  return {c.source, c.target};
}

PulseSchedule synthesize(const ProtocolSpec& spec, int n_samples) {
  spec.validate();
  if (n_samples < 2) throw std::invalid_argument("a schedule needs at least 2 samples");
  PulseSchedule schedule;
  schedule.spec = spec;
  schedule.times = uniform_grid(0.0, spec.duration, n_samples);
  schedule.couplings.resize(n_samples, spec.n_qubits);
  for (int k = 0; k < n_samples; ++k) {
    schedule.couplings.row(k) = coupling_vector(spec, schedule.times[static_cast<std::size_t>(k)]);
  }
  schedule.peak_coupling = schedule.couplings.cwiseAbs().maxCoeff();
  return schedule;
}

PathwayReport verify_pathway(const ProtocolSpec& spec, std::span<const double> grid) {
  spec.validate();
  PathwayReport report;
  const cd i(0.0, 1.0);
  for (double t : grid) {
    const Eigen::VectorXcd psi = dark_state(spec, t);
    const Eigen::VectorXcd dpsi = dark_state_derivative(spec, t);
    const Eigen::MatrixXcd h = hamiltonian(coupling_vector(spec, t));
    const Eigen::VectorXcd h_psi = h * psi;
    report.max_norm_error = std::max(report.max_norm_error, std::abs(psi.squaredNorm() - 1.0));
    report.max_energy_expectation =
        std::max(report.max_energy_expectation, std::abs(psi.dot(h_psi)));
    report.max_schrodinger_residual =
        std::max(report.max_schrodinger_residual, (i * dpsi - h_psi).norm());
  }
  return report;
}

std::vector<double> uniform_grid(double t0, double t1, int n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double span = t1 - t0;
  for (int k = 0; k < n; ++k) {
    grid[static_cast<std::size_t>(k)] = t0 + span * static_cast<double>(k) / (n - 1);
  }
  grid.back() = t1;
  return grid;
}

}  // namespace darkpath
