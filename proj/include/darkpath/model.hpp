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

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace darkpath {

/// Restricted basis {|G>, |1>, ..., |N>, |a>}.
///
/// |G> carries no excitation and only exists so that decay has somewhere to
/// go; the Hamiltonian never touches it.
class Basis {
 public:
  explicit Basis(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  int dim() const { return n_qubits_ + 2; }
  static constexpr int ground() { return 0; }
  int qubit(int j) const;  // j in 1..N
  int bus() const { return n_qubits_ + 1; }
  std::string label(int index) const;

 private:
  int n_qubits_;
};

/// Decay and dephasing rates, angular-frequency units of the run.
struct NoiseModel {
  std::vector<double> decay_qubit;
  std::vector<double> dephase_qubit;
  double decay_bus = 0.0;
  double dephase_bus = 0.0;

  static NoiseModel none(int n_qubits);
  /// All four channel families at the same rate.
  static NoiseModel uniform(int n_qubits, double rate);
  /// Qubits at `qubit_rate`, bus decay and dephasing at `bus_rate`.
  static NoiseModel bus_fixed(int n_qubits, double qubit_rate, double bus_rate);

  NoiseModel scaled(double factor) const;
  bool is_noiseless() const;
  void validate(int n_qubits) const;
};

/// Static control errors: amplitude deviation epsilon and qubit drift delta.
struct ErrorModel {
  double epsilon = 0.0;
  double delta = 0.0;
};

/// (1 + epsilon) * sum_j g_j (|j><a| + |a><j|) + delta * sum_j |j><j|.
Eigen::MatrixXcd hamiltonian(const Eigen::VectorXd& couplings, const ErrorModel& error = {});

/// Same layout with complex couplings c_j placed on |j><a| and conj(c_j) on |a><j|.
Eigen::MatrixXcd hamiltonian_complex(const Eigen::VectorXcd& couplings,
                                     const ErrorModel& error = {});

struct CollapseOperator {
  double rate = 0.0;
  Eigen::MatrixXd op;
  std::string label;
};

/// Decay |G><k| and dephasing (identity with -1 at k) for every qubit and the
/// bus. Channels with zero rate are left out.
std::vector<CollapseOperator> collapse_operators(const NoiseModel& noise, const Basis& basis);

}  // namespace darkpath
