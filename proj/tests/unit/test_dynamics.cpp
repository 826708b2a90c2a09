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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <doctest.h>

#include "darkpath/dynamics.hpp"
#include "darkpath/model.hpp"
#include "darkpath/pulse_design.hpp"
#include "oracles.hpp"

using namespace darkpath;

namespace {

ProtocolSpec baseline(ProtocolKind kind) {
  ProtocolSpec s;
  s.kind = kind;
  switch (kind) {
    case ProtocolKind::kQst:
      s.amplitude = 0.7365;
      s.duration = 3.0;
      break;
    case ProtocolKind::kPairEsg:
      s.amplitude = 0.7138;
      s.duration = 2.8;
      break;
    case ProtocolKind::kAllEsg:
      s.amplitude = 0.6143;
      s.duration = 2.0 * std::numbers::pi / 3.0;
      break;
  }
  return s;
}

const ProtocolKind kAllKinds[] = {ProtocolKind::kQst, ProtocolKind::kPairEsg, ProtocolKind::kAllEsg};

DensityMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = {n(rng), n(rng)};
  }
  DensityMatrix rho = m * m.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("fidelity examples") {
  StateVector t = StateVector::Zero(5);
  t(3) = 1.0;
  CHECK(fidelity(pure_density(t), t) == doctest::Approx(1.0));
  StateVector g = StateVector::Zero(5);
  g(0) = 1.0;
  CHECK(fidelity(pure_density(g), t) == 0.0);
  const DensityMatrix mixed = Eigen::MatrixXcd::Identity(5, 5) / 5.0;
  CHECK(fidelity(mixed, t) == doctest::Approx(0.2));
  StateVector phased = t * std::complex<double>(0.0, 1.0);
  CHECK(state_fidelity(phased, t) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fidelity(mixed, StateVector::Zero(4)), std::invalid_argument);
  DensityMatrix skew = mixed;
  skew(0, 3) = std::complex<double>(0.0, 1.0);
  StateVector plus = StateVector::Zero(5);
  plus(0) = plus(3) = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(fidelity(skew, plus), NumericalError);
}

TEST_CASE("initial and target states") {
  ProtocolSpec s = baseline(ProtocolKind::kQst);
  s.source = 2;
  s.target = 1;
  const StateVector psi0 = initial_state(s);
  CHECK(psi0(2) == 1.0);
  CHECK(psi0.norm() == 1.0);
  const StateVector target = target_state(s);
  CHECK(std::abs(target(1) + 1.0) < 1e-14);
}

TEST_CASE("zero Hamiltonian leaves the state alone") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  StateVector psi(4);
  for (int i = 0; i < 4; ++i) psi(i) = {n(rng), n(rng)};
  psi.normalize();
  auto zero = [](double) { return Eigen::MatrixXcd::Zero(4, 4).eval(); };
  const SimulationResult r = integrate_schrodinger(zero, psi, psi, 2.0, 200);
  CHECK((r.final_state - psi).norm() == 0.0);
  CHECK(r.final_fidelity == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("too few steps are refused") {
  const ProtocolSpec s = baseline(ProtocolKind::kQst);
  CHECK_THROWS_AS(propagate_schrodinger(s, {}, initial_state(s), 50), std::invalid_argument);
  CHECK_THROWS_AS(propagate_lindblad(s, {}, NoiseModel::uniform(3, 1e-3), pure_density(initial_state(s)), 99),
                  std::invalid_argument);
}

TEST_CASE("dissipator matches the direct Lindblad sum") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  const Basis basis(3);
  NoiseModel noise;
  noise.decay_qubit = {0.01, 0.02, 0.03};
  noise.dephase_qubit = {0.04, 0.0, 0.06};
  noise.decay_bus = 0.07;
  noise.dephase_bus = 0.08;
  auto ops = collapse_operators(noise, basis);
  // one dense operator to exercise the general path
  Eigen::MatrixXd dense(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) dense(i, j) = n(rng);
  }
  ops.push_back({0.05, dense, "dense"});

  const Dissipator d(ops, 5);
  const DensityMatrix rho = random_density(5, rng);
  DensityMatrix got = DensityMatrix::Zero(5, 5);
  d.accumulate(rho, got);
  DensityMatrix want = DensityMatrix::Zero(5, 5);
  for (const auto& c : ops) {
    const Eigen::MatrixXcd op = c.op.cast<std::complex<double>>();
    const Eigen::MatrixXcd dd = op.adjoint() * op;
    want += c.rate * (op * rho * op.adjoint() - 0.5 * (dd * rho + rho * dd));
  }
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(Dissipator(collapse_operators(NoiseModel::none(3), basis), 5).empty());
}

TEST_CASE("master equation agrees with the Liouvillian exponential") {
  std::mt19937_64 rng(3);
  const Basis basis(3);
  Eigen::VectorXd g(3);
  g << 0.8, -0.4, 0.3;
  const Eigen::MatrixXcd h = hamiltonian(g, {0.02, 0.05});
  NoiseModel noise;
  noise.decay_qubit = {0.01, 0.02, 0.03};
  noise.dephase_qubit = {0.02, 0.01, 0.0};
  noise.decay_bus = 0.05;
  noise.dephase_bus = 0.01;
  const auto ops = collapse_operators(noise, basis);
  std::vector<oracle::Channel> channels;
  for (const auto& c : ops) channels.push_back({c.rate, c.op.cast<std::complex<double>>()});

  const DensityMatrix rho0 = random_density(5, rng);
  const StateVector target = StateVector::Unit(5, 2);
  const SimulationResult r =
      integrate_lindblad([&](double) { return h; }, Dissipator(ops, 5), rho0, target, 4.0, 2000);
  const Eigen::MatrixXcd exact = oracle::lindblad_exact(h, channels, rho0, 4.0);
  CHECK((r.final_density - exact).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("single-channel closed forms") {
  const Basis basis(2);
  auto zero = [](double) { return Eigen::MatrixXcd::Zero(4, 4).eval(); };

  NoiseModel decay = NoiseModel::none(2);
  decay.decay_qubit[0] = 0.3;
  const DensityMatrix excited = pure_density(StateVector::Unit(4, 1));
  const SimulationResult a = integrate_lindblad(zero, Dissipator(collapse_operators(decay, basis), 4), excited,
                                                StateVector::Unit(4, 1), 2.0, 400);
  CHECK(a.final_fidelity == doctest::Approx(std::exp(-0.6)).epsilon(1e-10));
  CHECK(a.final_density(0, 0).real() == doctest::Approx(1.0 - std::exp(-0.6)).epsilon(1e-10));

  // literal sigma_z dephasing shrinks coherences at twice the rate
  NoiseModel dephase = NoiseModel::none(2);
  dephase.dephase_qubit[0] = 0.25;
  StateVector plus = StateVector::Zero(4);
  plus(1) = plus(3) = 1.0 / std::sqrt(2.0);
  const SimulationResult b = integrate_lindblad(zero, Dissipator(collapse_operators(dephase, basis), 4),
                                                pure_density(plus), plus, 2.0, 400);
  CHECK(std::abs(b.final_density(1, 3)) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-10));
  CHECK(b.final_fidelity == doctest::Approx(0.5 + 0.5 * std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("noiseless QST reaches the target") {
  const ProtocolSpec s = baseline(ProtocolKind::kQst);
  const SimulationResult r = propagate_schrodinger(s, {}, initial_state(s));
  CHECK(r.final_fidelity >= 0.9999);
  CHECK(r.diagnostics.max_norm_deviation < 1e-10);
  CHECK(r.populations.rows() == 4002);
  CHECK(r.times.back() == 3.0);
}

TEST_CASE("tracking the dark pathway") {
  for (ProtocolKind kind : kAllKinds) {
    for (double a : {0.3, 0.7365, 1.2}) {
      ProtocolSpec s = baseline(kind);
      s.amplitude = a;
      const SimulationResult r = propagate_schrodinger(s, {}, initial_state(s), 4001);
      CHECK(r.diagnostics.max_reference_infidelity < 1e-5);
      const SimulationResult coarse = propagate_schrodinger(s, {}, initial_state(s), 2001);
      CHECK(coarse.diagnostics.max_reference_infidelity < 1e-6);
    }
  }
}

TEST_CASE("record stride keeps the final sample") {
  const ProtocolSpec s = baseline(ProtocolKind::kQst);
  const SimulationResult r = propagate_schrodinger(s, {}, initial_state(s), 1000, 300);
  CHECK(r.times.size() == 5);
  CHECK(r.times.back() == 3.0);
  CHECK(r.fidelity.back() == r.final_fidelity);
}

TEST_CASE("noiseless master equation equals the Schrodinger result") {
  for (ProtocolKind kind : kAllKinds) {
    const ProtocolSpec s = baseline(kind);
    const SimulationResult psi = propagate_schrodinger(s, {}, initial_state(s));
    const SimulationResult rho = propagate_lindblad(s, {}, NoiseModel::none(3), pure_density(initial_state(s)));
    CHECK((rho.final_density - pure_density(psi.final_state)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(rho.final_fidelity - psi.final_fidelity) < 1e-8);
  }
}

TEST_CASE("noisy baselines keep their contracts") {
  for (ProtocolKind kind : kAllKinds) {
    const ProtocolSpec s = baseline(kind);
    const NoiseModel noise = NoiseModel::uniform(3, 1.0 / 2000.0);
    const SimulationResult r = propagate_lindblad(s, {}, noise, pure_density(initial_state(s)));
    CHECK(r.diagnostics.max_trace_deviation < 1e-8);
    CHECK(r.diagnostics.max_hermiticity_deviation < 1e-10);
    CHECK(r.diagnostics.min_eigenvalue > -1e-8);
    CHECK(r.diagnostics.max_population_sum <= 1.0 + 1e-8);
    const SimulationResult fine = propagate_lindblad(s, {}, noise, pure_density(initial_state(s)), 8002);
    CHECK(std::abs(fine.final_fidelity - r.final_fidelity) < 1e-7);
    const SimulationResult clean = propagate_schrodinger(s, {}, initial_state(s));
    CHECK(r.final_fidelity <= clean.final_fidelity);
    for (double f : r.fidelity) {
      CHECK(f >= 0.0);
      CHECK(f <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("fidelity falls as the noise grows") {
  const ProtocolSpec s = baseline(ProtocolKind::kPairEsg);
  double previous = 1.0;
  for (double rate : {0.0, 1e-4, 5e-4, 1e-3, 5e-3}) {
    const double f =
        propagate_lindblad(s, {}, NoiseModel::uniform(3, rate), pure_density(initial_state(s))).final_fidelity;
    CHECK(f <= previous + 1e-12);
    previous = f;
  }
}

TEST_CASE("trace blow-up aborts the run") {
  auto bad = [](double t) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    if (t > 0.5) h(0, 0) = std::numeric_limits<double>::quiet_NaN();
    return h;
  };
  const DensityMatrix rho = pure_density(StateVector::Unit(3, 1));
  CHECK_THROWS_AS(integrate_lindblad(bad, Dissipator(), rho, StateVector::Unit(3, 1), 1.0, 100), NumericalError);
}

TEST_CASE("density validation") {
  DensityMatrix rho = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
  CHECK_NOTHROW(validate_density(rho, 3));
  CHECK_THROWS_AS(validate_density(rho, 4), std::invalid_argument);
  rho(0, 0) = 0.5;
  CHECK_THROWS_AS(validate_density(rho, 3), std::invalid_argument);
  rho = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
  rho(0, 1) = 0.1;
  CHECK_THROWS_AS(validate_density(rho, 3), std::invalid_argument);
}

}  // TEST_SUITE
