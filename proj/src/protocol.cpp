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

#include "darkpath/protocol.hpp"

#include <cmath>
#include <numbers>

namespace darkpath {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kQst:
      return "qst";
    case ProtocolKind::kPairEsg:
      return "pair_esg";
    case ProtocolKind::kAllEsg:
      return "all_esg";
  }
  return "unknown";
}

ProtocolKind parse_protocol_kind(std::string_view name) {
  if (name == "qst") return ProtocolKind::kQst;
  if (name == "pair_esg") return ProtocolKind::kPairEsg;
  if (name == "all_esg") return ProtocolKind::kAllEsg;
  throw std::invalid_argument("unknown protocol '" + std::string(name) +
                              "' (expected qst, pair_esg or all_esg)");
}

double ProtocolSpec::theta() const {
  switch (kind) {
    case ProtocolKind::kQst:
      return std::numbers::pi / 2.0;
    case ProtocolKind::kPairEsg:
      return std::numbers::pi / 4.0;
    case ProtocolKind::kAllEsg:
      return std::acos(std::sqrt(1.0 / n_qubits));
  }
  return 0.0;
}

bool ProtocolSpec::has_idle_branch() const {
  return kind != ProtocolKind::kAllEsg && n_qubits > 2;
}

bool ProtocolSpec::amplitude_beyond_monotone() const {
  return amplitude > std::numbers::pi / 2.0;
}

void ProtocolSpec::validate() const {
  if (n_qubits < 2) throw std::invalid_argument("n_qubits must be at least 2");
  if (source < 1 || source > n_qubits) {
    throw std::invalid_argument("source qubit " + std::to_string(source) +
                                " outside 1.." + std::to_string(n_qubits));
  }
  if (kind != ProtocolKind::kAllEsg) {
    if (target < 1 || target > n_qubits) {
      throw std::invalid_argument("target qubit " + std::to_string(target) +
                                  " outside 1.." + std::to_string(n_qubits));
    }
    if (target == source) throw std::invalid_argument("source and target must differ");
  }
  if (!(amplitude > 0.0) || amplitude > kMaxAmplitude) {
    throw std::invalid_argument("amplitude must lie in (0, 5]");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("duration must be positive");
  }
  if (!(g_max > 0.0) || !std::isfinite(g_max)) {
    throw std::invalid_argument("g_max must be positive");
  }
}

}  // namespace darkpath
