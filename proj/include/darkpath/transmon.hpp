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

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "darkpath/dynamics.hpp"
#include "darkpath/model.hpp"
#include "darkpath/protocol.hpp"

namespace darkpath {

// Transmon runs use ns for time and rad/ns for every frequency and rate.

/// Location of the first maximum of J1; J1 is monotone on [0, kBesselJ1ArgMax].
inline constexpr double kBesselJ1ArgMax = 1.8411837813406593;
/// Full-model RK4 needs at least this many steps per modulation period.
inline constexpr int kMinStepsPerPeriod = 200;

/// Frequency f in MHz to angular frequency 2*pi*f in rad/ns.
constexpr double mhz(double f) { return 2.0 * 3.14159265358979323846 * f * 1e-3; }
/// Frequency f in kHz to angular frequency 2*pi*f in rad/ns.
constexpr double khz(double f) { return 2.0 * 3.14159265358979323846 * f * 1e-6; }

/// Bessel function of the first kind, order 1. Power series for |x| <= 12,
/// Hankel asymptotic expansion beyond.
double bessel_j1(double x);
/// J1(kBesselJ1ArgMax), about 0.5819.
double bessel_j1_max();

/// The requested effective coupling needs J1(eta) above its maximum.
class InfeasibleDrive : public std::runtime_error {
 public:
  InfeasibleDrive(int qubit, double time, double ratio);
  int qubit() const { return qubit_; }
  double time() const { return time_; }
  double ratio() const { return ratio_; }  // g / Omega

 private:
  int qubit_;
  double time_;
  double ratio_;
};

/// eta in [0, kBesselJ1ArgMax] with Omega * J1(eta) = g, by bisection to
/// machine precision. g must be non-negative; the sign is the caller's job.
double invert_bessel(double g, double omega);

struct TransmonParams {
  std::vector<double> omega;       // bare qubit-resonator coupling per qubit
  std::vector<double> detuning;    // qubit-resonator detuning per qubit
  std::vector<double> modulation;  // modulation frequency per qubit
  NoiseModel noise;
  int steps_per_period = 400;
  bool resonant = true;  // require modulation == detuning

  /// 2pi x 17 MHz couplings, 2pi x 800 MHz detuning and modulation, 2pi x 5 kHz on every channel.
  static TransmonParams defaults(int n_qubits);

  /// Largest effective coupling every qubit can reach: min_j Omega_j * J1max.
  double coupling_cap() const;
  double max_modulation() const;
  void validate(int n_qubits) const;
};

enum class DrivePolicy {
  kStrict,    ///< infeasible samples throw InfeasibleDrive
  kSaturate,  ///< infeasible samples are clipped to eta = kBesselJ1ArgMax
};

/// Modulation amplitudes eta_j(t) on the schedule grid. A set phase flag
/// means the drive carries an extra pi phase so the effective coupling is
/// -Omega J1(eta).
struct DriveWaveform {
  std::vector<double> times;
  Eigen::MatrixXd eta;         // rows: samples, columns: qubits
  Eigen::MatrixXi phase_flag;  // 1 where the designed coupling is negative
  int saturated_samples = 0;
  double max_request_ratio = 0.0;  // max_j,t |g_j(t)| / (Omega_j J1max)

  /// Linear interpolation of the signed amplitude; returns (eta, sign).
  std::pair<double, double> at(int qubit, double t) const;
};

DriveWaveform design_physical(const ProtocolSpec& spec, const TransmonParams& params,
                              DrivePolicy policy = DrivePolicy::kStrict, int samples = 2001);

/// Interaction-picture Hamiltonian with the exact modulation phase:
/// Omega_j exp(i Delta_j t - i eta_j(t) sin(nu_j t)) on |j><a| plus conjugates.
Eigen::MatrixXcd full_hamiltonian(double t, const TransmonParams& params,
                                  const DriveWaveform& waveform);

enum class PhysicalModel { kEffective, kFull };

struct PhysicalOptions {
  DrivePolicy policy = DrivePolicy::kStrict;
  int effective_steps = kDefaultSteps;
  int waveform_samples = 2001;
  int record_stride = 1;
};

struct PhysicalRun {
  SimulationResult result;
  DriveWaveform waveform;
  int steps = 0;
};

/// Lindblad propagation with params.noise under either the effective
/// Hamiltonian (couplings g_j(t), clipped to the drive cap) or the full
/// oscillating-phase Hamiltonian.
PhysicalRun simulate_physical(const ProtocolSpec& spec, const TransmonParams& params,
                              PhysicalModel model, const PhysicalOptions& options = {});

/// Spec in transmon units: duration in ns, g_max set to the drive cap.
ProtocolSpec physical_spec(ProtocolSpec tmpl, const TransmonParams& params);

}  // namespace darkpath
