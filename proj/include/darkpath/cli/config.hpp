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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "darkpath/model.hpp"
#include "darkpath/protocol.hpp"
#include "darkpath/transmon.hpp"

namespace darkpath::cli {

using Json = nlohmann::ordered_json;

/// Malformed or unknown configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rates in units of g_max, applied to every qubit.
struct NoiseConfig {
  double decay_qubit = 0.0;
  double dephase_qubit = 0.0;
  double decay_bus = 0.0;
  double dephase_bus = 0.0;
};

/// Frequencies in MHz and rates in kHz. With two_pi set they are cyclic and
/// get multiplied by 2 pi; otherwise they are already angular (Mrad/s, krad/s).
struct TransmonConfig {
  double omega_mhz = 17.0;
  double detuning_mhz = 800.0;
  double modulation_mhz = 800.0;
  double gamma_khz = 5.0;
  bool two_pi = true;
  int steps_per_period = 400;
  std::string drive_policy = "strict";  // strict | saturate
  int waveform_samples = 2001;
};

struct OptimizeConfig {
  std::vector<std::string> protocols{"qst", "pair_esg", "all_esg"};
  double a_min = 0.05;
  double a_max = 2.0;
  double a_step = 0.01;
};

struct ScanConfig {
  std::string kind = "x_error";  // x_error | z_error | decoherence
  std::string decoherence_mode = "uniform";  // uniform | bus_fixed
  double a_min = 0.3;
  double a_max = 1.2;
  int a_count = 41;
  // Defaults depend on kind: +-0.1 for x_error, +-g_max/10 for z_error, [0, g_max/1000] for decoherence.
  std::optional<double> y_min;
  std::optional<double> y_max;
  int y_count = 41;
  std::optional<double> bus_rate;  // default g_max/1000
};

struct SweepConfig {
  int n_min = 3;
  int n_max = 10;
  bool physical = true;
  double noise_rate = 0.0005;  // dimensionless sweeps, units of g_max
};

struct RunConfig {
  std::string protocol = "qst";
  int n_qubits = 3;
  int source = 1;
  int target = 3;
  std::optional<double> amplitude;  // default: minimal-time amplitude
  std::optional<double> duration;   // default: minimal duration for the amplitude
  double g_max = 1.0;
  int samples = 2001;
  int steps = 4001;
  int record_stride = 1;
  std::string mode = "dimensionless";  // dimensionless | transmon
  std::string model = "full";          // effective | full
  int jobs = 1;
  std::string out = "out";
  NoiseConfig noise;
  ErrorModel error;
  TransmonConfig transmon;
  OptimizeConfig optimize;
  ScanConfig scan;
  SweepConfig sweep;
};

/// Fills a RunConfig from JSON. Unknown keys and wrong types throw ConfigError.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::filesystem::path& path);
/// Every field, defaults included; optionals that are unset appear as null.
Json to_json(const RunConfig& config);

/// Semantic checks across fields; throws ConfigError.
void validate(const RunConfig& config);

ProtocolKind protocol_kind(const RunConfig& config);
/// Protocol template with amplitude and duration still unresolved.
ProtocolSpec protocol_template(const RunConfig& config);
NoiseModel noise_model(const RunConfig& config);
TransmonParams transmon_params(const RunConfig& config);
DrivePolicy drive_policy(const RunConfig& config);
PhysicalModel physical_model(const RunConfig& config);
bool transmon_mode(const RunConfig& config);

}  // namespace darkpath::cli
