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

#include "darkpath/model.hpp"

#include <cmath>
#include <stdexcept>

namespace darkpath {

Basis::Basis(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("basis needs at least one qubit");
}

int Basis::qubit(int j) const {
  if (j < 1 || j > n_qubits_) throw std::out_of_range("qubit index out of range");
  return j;
}

std::string Basis::label(int index) const {
  if (index == ground()) return "G";
  if (index == bus()) return "a";
  if (index >= 1 && index <= n_qubits_) return std::to_string(index);
  throw std::out_of_range("basis index out of range");
}

NoiseModel NoiseModel::none(int n_qubits) { return uniform(n_qubits, 0.0); }

NoiseModel NoiseModel::uniform(int n_qubits, double rate) {
  return bus_fixed(n_qubits, rate, rate);
}

NoiseModel NoiseModel::bus_fixed(int n_qubits, double qubit_rate, double bus_rate) {
  NoiseModel noise;
  noise.decay_qubit.assign(static_cast<std::size_t>(n_qubits), qubit_rate);
  noise.dephase_qubit.assign(static_cast<std::size_t>(n_qubits), qubit_rate);
  noise.decay_bus = bus_rate;
  noise.dephase_bus = bus_rate;
  return noise;
}

NoiseModel NoiseModel::scaled(double factor) const {
  NoiseModel out = *this;
  for (double& r : out.decay_qubit) r *= factor;
  for (double& r : out.dephase_qubit) r *= factor;
  out.decay_bus *= factor;
  out.dephase_bus *= factor;
  return out;
}

bool NoiseModel::is_noiseless() const {
  for (double r : decay_qubit) {
    if (r != 0.0) return false;
  }
  for (double r : dephase_qubit) {
    if (r != 0.0) return false;
  }
  return decay_bus == 0.0 && dephase_bus == 0.0;
}

void NoiseModel::validate(int n_qubits) const {
  const auto n = static_cast<std::size_t>(n_qubits);
  if (decay_qubit.size() != n || dephase_qubit.size() != n) {
    throw std::invalid_argument("noise model needs one decay and one dephasing rate per qubit");
  }
  auto check = [](double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("noise rates must be finite and non-negative");
    }
  };
  for (double r : decay_qubit) check(r);
  for (double r : dephase_qubit) check(r);
  check(decay_bus);
  check(dephase_bus);
}

Eigen::MatrixXcd hamiltonian(const Eigen::VectorXd& couplings, const ErrorModel& error) {
  return hamiltonian_complex(couplings.cast<std::complex<double>>(), error);
}

Eigen::MatrixXcd hamiltonian_complex(const Eigen::VectorXcd& couplings, const ErrorModel& error) {
  const int n = static_cast<int>(couplings.size());
  if (n < 1) throw std::invalid_argument("hamiltonian needs at least one coupling");
  const Basis basis(n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  const double scale = 1.0 + error.epsilon;
  for (int j = 1; j <= n; ++j) {
    const std::complex<double> c = scale * couplings(j - 1);
    h(j, basis.bus()) = c;
    h(basis.bus(), j) = std::conj(c);
    h(j, j) = error.delta;
  }
  return h;
}

std::vector<CollapseOperator> collapse_operators(const NoiseModel& noise, const Basis& basis) {
  noise.validate(basis.n_qubits());
  const int d = basis.dim();
  std::vector<CollapseOperator> ops;

  auto add_pair = [&](int index, double decay, double dephase, const std::string& name) {
    if (decay > 0.0) {
      Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(d, d);
      lower(Basis::ground(), index) = 1.0;
      ops.push_back({decay, std::move(lower), "decay_" + name});
    }
    if (dephase > 0.0) {
      Eigen::MatrixXd z = Eigen::MatrixXd::Identity(d, d);
      z(index, index) = -1.0;
      ops.push_back({dephase, std::move(z), "dephase_" + name});
    }
  };

  for (int k = 1; k <= basis.n_qubits(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    add_pair(basis.qubit(k), noise.decay_qubit[i], noise.dephase_qubit[i], std::to_string(k));
  }
  add_pair(basis.bus(), noise.decay_bus, noise.dephase_bus, "a");
  return ops;
}

}  // namespace darkpath
