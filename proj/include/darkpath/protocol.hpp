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
#include <string>
#include <string_view>

namespace darkpath {

enum class ProtocolKind {
  kQst,      ///< excitation moves from the source qubit to the target qubit
  kPairEsg,  ///< Bell pair between source and target
  kAllEsg,   ///< equal superposition over all qubits
};

std::string_view to_string(ProtocolKind kind);

/// Accepts "qst", "pair_esg" and "all_esg". Throws std::invalid_argument otherwise.
ProtocolKind parse_protocol_kind(std::string_view name);

/// Raised when an integrator or a pulse evaluation leaves its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to build one dark-pathway protocol.
///
/// Qubits are numbered 1..n_qubits, which is also their index in the
/// restricted basis (index 0 is the ground state, n_qubits + 1 the bus).
/// `duration` and `g_max` share a unit system: dimensionless runs use
/// g_max = 1 and time in 1/g_max; transmon runs use ns and rad/ns.
struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::kQst;
  int n_qubits = 3;
  int source = 1;
  int target = 3;  // ignored for kAllEsg
  double amplitude = 0.7365;
  double duration = 3.0;
  double g_max = 1.0;

  /// Final mixing angle: pi/2 (QST), pi/4 (pair ESG), arccos(sqrt(1/N)) (all-qubit ESG).
  double theta() const;

  /// True for two-qubit protocols with at least one qubit outside {source, target}.
  bool has_idle_branch() const;

  /// Above pi/2 the auxiliary angle passes the cot sign change; allowed but unusual.
  bool amplitude_beyond_monotone() const;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

inline constexpr double kMaxAmplitude = 5.0;

}  // namespace darkpath
