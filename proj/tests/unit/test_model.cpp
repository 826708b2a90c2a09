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

#include <doctest.h>

#include "darkpath/model.hpp"

using namespace darkpath;

TEST_SUITE("model") {

TEST_CASE("basis layout") {
  const Basis b(3);
  CHECK(b.dim() == 5);
  CHECK(Basis::ground() == 0);
  CHECK(b.qubit(2) == 2);
  CHECK(b.bus() == 4);
  CHECK(b.label(0) == "G");
  CHECK(b.label(4) == "a");
  CHECK(b.label(3) == "3");
  CHECK_THROWS_AS(b.qubit(4), std::out_of_range);
  CHECK_THROWS_AS(b.label(5), std::out_of_range);
}

TEST_CASE("zero couplings give the zero matrix") {
  CHECK(hamiltonian(Eigen::VectorXd::Zero(3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("star pattern") {
  Eigen::VectorXd g(3);
  g << 0.3, -0.7, 1.1;
  const Eigen::MatrixXcd h = hamiltonian(g);
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      const bool bus_edge = (r == 4 && c >= 1 && c <= 3) || (c == 4 && r >= 1 && r <= 3);
      if (!bus_edge) CHECK(h(r, c) == 0.0);
    }
  }
  CHECK(h(2, 4).real() == -0.7);
  CHECK(h(4, 3).real() == 1.1);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("static errors") {
  Eigen::VectorXd g(3);
  g << 0.3, -0.7, 1.1;
  const Eigen::MatrixXcd base = hamiltonian(g);
  const Eigen::MatrixXcd x = hamiltonian(g, {0.1, 0.0});
  CHECK((x - 1.1 * base).cwiseAbs().maxCoeff() < 1e-15);

  const Eigen::MatrixXcd z = hamiltonian(g, {0.1, 0.25});
  for (int j = 1; j <= 3; ++j) CHECK(z(j, j).real() == 0.25);
  CHECK(z(4, 4) == 0.0);
  CHECK(z(1, 4).real() == doctest::Approx(0.33));
  // |G> stays uncoupled whatever the errors are
  CHECK(z.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((z - z.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("complex couplings stay Hermitian") {
  Eigen::VectorXcd g(2);
  g << std::complex<double>(0.2, 0.5), std::complex<double>(-1.0, 0.1);
  const Eigen::MatrixXcd h = hamiltonian_complex(g, {0.05, -0.1});
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h(3, 1) == std::conj(h(1, 3)));
}

TEST_CASE("collapse operators") {
  const Basis b(3);
  CHECK(collapse_operators(NoiseModel::none(3), b).empty());

  const auto ops = collapse_operators(NoiseModel::uniform(3, 0.01), b);
  CHECK(ops.size() == 8);
  int decays = 0;
  for (const auto& c : ops) {
    CHECK(c.rate == 0.01);
    if (c.label.rfind("decay_", 0) == 0) {
      ++decays;
      CHECK((c.op * c.op).cwiseAbs().maxCoeff() == 0.0);
      CHECK(c.op.col(0).cwiseAbs().maxCoeff() == 0.0);
      CHECK(c.op.row(0).sum() == 1.0);
    } else {
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(5, 5);
      CHECK((c.op * c.op - id).cwiseAbs().maxCoeff() == 0.0);
      CHECK((c.op - c.op.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  CHECK(decays == 4);
  CHECK(ops.back().label == "dephase_a");
}

TEST_CASE("dephasing operator layout for two qubits") {
  NoiseModel n = NoiseModel::none(2);
  n.dephase_qubit[0] = 1.0;
  const auto ops = collapse_operators(n, Basis(2));
  REQUIRE(ops.size() == 1);
  Eigen::VectorXd expected(4);
  expected << 1, -1, 1, 1;
  CHECK(ops[0].op.diagonal() == expected);
  CHECK(ops[0].label == "dephase_1");
}

TEST_CASE("noise model helpers") {
  const NoiseModel n = NoiseModel::bus_fixed(3, 0.002, 0.001);
  CHECK(n.decay_qubit[2] == 0.002);
  CHECK(n.dephase_bus == 0.001);
  CHECK_FALSE(n.is_noiseless());
  CHECK(n.scaled(0.0).is_noiseless());
  CHECK(n.scaled(2.0).decay_bus == 0.002);
  NoiseModel bad = NoiseModel::none(3);
  bad.decay_bus = -1.0;
  CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::none(2).validate(3), std::invalid_argument);
}

}  // TEST_SUITE
