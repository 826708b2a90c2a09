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

#include "darkpath/transmon.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "darkpath/pulse_design.hpp"

namespace darkpath {

namespace {

using cd = std::complex<double>;

double j1_series(double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = half;
  double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= -q / ((k + 1.0) * (k + 2.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Hankel expansion J1(x) ~ sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - 3pi/4.
double j1_asymptotic(double x) {
  const double mu = 4.0;
  const double z = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * z);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    // Odd k feeds Q, even k feeds P; both alternate in sign every other term.
    const double signed_term = (k / 2) % 2 == 0 ? term : -term;
    if (k % 2 == 1) {
      q += signed_term;
    } else {
      p += signed_term;
    }
    if (last < 1e-17) break;
  }
  const double chi = x - 0.75 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel_j1 of a non-finite argument");
  const double ax = std::abs(x);
  const double value = ax <= 12.0 ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -value : value;
}

double bessel_j1_max() {
  static const double value = bessel_j1(kBesselJ1ArgMax);
  return value;
}

InfeasibleDrive::InfeasibleDrive(int qubit, double time, double ratio)
    : std::runtime_error("infeasible drive: qubit " + std::to_string(qubit) + " at t=" +
                         std::to_string(time) + " needs g/Omega=" + std::to_string(ratio) +
                         " above the J1 maximum " + std::to_string(bessel_j1_max())),
      qubit_(qubit),
      time_(time),
      ratio_(ratio) {}

double invert_bessel(double g, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("invert_bessel: Omega must be positive");
  if (!(g >= 0.0)) throw std::invalid_argument("invert_bessel: g must be non-negative");
  const double ratio = g / omega;
  const double cap = bessel_j1_max();
  if (ratio > cap * (1.0 + 1e-9)) throw InfeasibleDrive(0, 0.0, ratio);
  if (ratio >= cap) return kBesselJ1ArgMax;
  if (ratio == 0.0) return 0.0;
  double lo = 0.0;
  double hi = kBesselJ1ArgMax;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (bessel_j1(mid) < ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(bessel_j1(lo) - ratio) <= std::abs(bessel_j1(hi) - ratio) ? lo : hi;
}

TransmonParams TransmonParams::defaults(int n_qubits) {
  TransmonParams p;
  const auto n = static_cast<std::size_t>(n_qubits);
  p.omega.assign(n, mhz(17.0));
  p.detuning.assign(n, mhz(800.0));
  p.modulation.assign(n, mhz(800.0));
  p.noise = NoiseModel::uniform(n_qubits, khz(5.0));
  return p;
}

double TransmonParams::coupling_cap() const {
  if (omega.empty()) throw std::invalid_argument("transmon parameters have no qubits");
  return *std::min_element(omega.begin(), omega.end()) * bessel_j1_max();
}

double TransmonParams::max_modulation() const {
  if (modulation.empty()) throw std::invalid_argument("transmon parameters have no qubits");
  return *std::max_element(modulation.begin(), modulation.end());
}

void TransmonParams::validate(int n_qubits) const {
  const auto n = static_cast<std::size_t>(n_qubits);
  if (omega.size() != n || detuning.size() != n || modulation.size() != n) {
    throw std::invalid_argument("transmon parameters need one value per qubit");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(omega[j] > 0.0)) throw std::invalid_argument("Omega must be positive");
    if (!(modulation[j] > 0.0)) throw std::invalid_argument("modulation frequency must be positive");
    if (resonant && std::abs(modulation[j] - detuning[j]) > 1e-12 * std::abs(detuning[j])) {
      throw std::invalid_argument("resonant mode requires modulation == detuning for qubit " +
                                  std::to_string(j + 1));
    }
  }
  noise.validate(n_qubits);
  if (steps_per_period < kMinStepsPerPeriod) {
    throw std::invalid_argument("steps_per_period must be at least " +
                                std::to_string(kMinStepsPerPeriod));
  }
}

std::pair<double, double> DriveWaveform::at(int qubit, double t) const {
  const int col = qubit - 1;
  const auto n = static_cast<Eigen::Index>(times.size());
  auto signed_eta = [&](Eigen::Index k) {
    return phase_flag(k, col) ? -eta(k, col) : eta(k, col);
  };
  double value;
  if (t <= times.front()) {
    value = signed_eta(0);
  } else if (t >= times.back()) {
    value = signed_eta(n - 1);
  } else {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const auto k1 = static_cast<Eigen::Index>(it - times.begin());
    const Eigen::Index k0 = k1 - 1;
    const double w = (t - times[static_cast<std::size_t>(k0)]) /
                     (times[static_cast<std::size_t>(k1)] - times[static_cast<std::size_t>(k0)]);
    value = (1.0 - w) * signed_eta(k0) + w * signed_eta(k1);
  }
  return {std::abs(value), value < 0.0 ? -1.0 : 1.0};
}

DriveWaveform design_physical(const ProtocolSpec& spec, const TransmonParams& params,
                              DrivePolicy policy, int samples) {
  spec.validate();
  params.validate(spec.n_qubits);
  const PulseSchedule schedule = synthesize(spec, samples);
  const double j1max = bessel_j1_max();

  DriveWaveform w;
  w.times = schedule.times;
  w.eta = Eigen::MatrixXd::Zero(samples, spec.n_qubits);
  w.phase_flag = Eigen::MatrixXi::Zero(samples, spec.n_qubits);

  int worst_qubit = 0;
  double worst_time = 0.0;
  for (int k = 0; k < samples; ++k) {
    for (int j = 1; j <= spec.n_qubits; ++j) {
      const double g = schedule.couplings(k, j - 1);
      const double omega = params.omega[static_cast<std::size_t>(j - 1)];
      const double request = std::abs(g) / (omega * j1max);
      if (request > w.max_request_ratio) {
        w.max_request_ratio = request;
        worst_qubit = j;
        worst_time = schedule.times[static_cast<std::size_t>(k)];
      }
    }
  }
  if (policy == DrivePolicy::kStrict && w.max_request_ratio > 1.0 + 1e-9) {
    throw InfeasibleDrive(worst_qubit, worst_time, w.max_request_ratio * j1max);
  }

  for (int k = 0; k < samples; ++k) {
    for (int j = 1; j <= spec.n_qubits; ++j) {
      const double g = schedule.couplings(k, j - 1);
      const double omega = params.omega[static_cast<std::size_t>(j - 1)];
      const double magnitude = std::abs(g);
      if (magnitude >= omega * j1max) {
        if (magnitude > omega * j1max * (1.0 + 1e-9)) ++w.saturated_samples;
        w.eta(k, j - 1) = kBesselJ1ArgMax;
      } else {
        w.eta(k, j - 1) = invert_bessel(magnitude, omega);
      }
      w.phase_flag(k, j - 1) = g < 0.0 ? 1 : 0;
    }
  }
  return w;
}

Eigen::MatrixXcd full_hamiltonian(double t, const TransmonParams& params,
                                  const DriveWaveform& waveform) {
  const int n = static_cast<int>(params.omega.size());
  Eigen::VectorXcd c(n);
  for (int j = 1; j <= n; ++j) {
    const auto i = static_cast<std::size_t>(j - 1);
    const auto [eta, sign] = waveform.at(j, t);
    const double phase = params.detuning[i] * t - eta * std::sin(params.modulation[i] * t);
    c(j - 1) = sign * params.omega[i] * std::polar(1.0, phase);
  }
  return hamiltonian_complex(c);
}

ProtocolSpec physical_spec(ProtocolSpec tmpl, const TransmonParams& params) {
  tmpl.g_max = params.coupling_cap();
  return tmpl;
}

PhysicalRun simulate_physical(const ProtocolSpec& spec, const TransmonParams& params,
                              PhysicalModel model, const PhysicalOptions& options) {
  PhysicalRun run;
  run.waveform = design_physical(spec, params, options.policy, options.waveform_samples);

  const Basis basis(spec.n_qubits);
  const Dissipator dissipator(collapse_operators(params.noise, basis), basis.dim());
  const DensityMatrix rho0 = pure_density(initial_state(spec));
  const StateVector target = target_state(spec);

  if (model == PhysicalModel::kEffective) {
    std::vector<double> caps(params.omega.size());
    for (std::size_t j = 0; j < caps.size(); ++j) caps[j] = params.omega[j] * bessel_j1_max();
    auto h = [&](double t) {
      Eigen::VectorXd g = coupling_vector(spec, t);
      for (Eigen::Index j = 0; j < g.size(); ++j) {
        const double cap = caps[static_cast<std::size_t>(j)];
        g(j) = std::clamp(g(j), -cap, cap);
      }
      return hamiltonian(g);
    };
    run.steps = options.effective_steps;
    run.result = integrate_lindblad(h, dissipator, rho0, target, spec.duration, run.steps,
                                    options.record_stride);
    return run;
  }

  const double period = 2.0 * std::numbers::pi / params.max_modulation();
  run.steps = static_cast<int>(std::ceil(spec.duration / period * params.steps_per_period));
  auto h = [&](double t) { return full_hamiltonian(t, params, run.waveform); };
  run.result = integrate_lindblad(h, dissipator, rho0, target, spec.duration, run.steps,
                                  options.record_stride);
  return run;
}

}  // namespace darkpath
