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

#include "darkpath/cli/config.hpp"

#include <fstream>
#include <set>

namespace darkpath::cli {

namespace {

// Reads fields out of one JSON object and remembers which keys were used, so
// anything left over can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be a JSON object");
  }

  void read(const char* key, double& out) { read_with(key, [&](const Json& v) { out = as_double(v, key); }); }
  void read(const char* key, int& out) { read_with(key, [&](const Json& v) { out = as_int(v, key); }); }
  void read(const char* key, bool& out) {
    read_with(key, [&](const Json& v) {
      if (!v.is_boolean()) throw ConfigError(name(key) + " must be a boolean");
      out = v.get<bool>();
    });
  }
  void read(const char* key, std::string& out) {
    read_with(key, [&](const Json& v) {
      if (!v.is_string()) throw ConfigError(name(key) + " must be a string");
      out = v.get<std::string>();
    });
  }
  void read(const char* key, std::vector<std::string>& out) {
    read_with(key, [&](const Json& v) {
      if (!v.is_array()) throw ConfigError(name(key) + " must be an array of strings");
      out.clear();
      for (const Json& e : v) {
        if (!e.is_string()) throw ConfigError(name(key) + " must be an array of strings");
        out.push_back(e.get<std::string>());
      }
    });
  }
  void read(const char* key, std::optional<double>& out) {
    read_with(key, [&](const Json& v) {
      if (v.is_null()) {
        out.reset();
      } else {
        out = as_double(v, key);
      }
    });
  }

  template <typename Fn>
  void child(const char* key, Fn&& fn) {
    read_with(key, [&](const Json& v) {
      ObjectReader sub(v, name(key));
      fn(sub);
      sub.finish();
    });
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.contains(it.key())) throw ConfigError("unknown configuration key '" + name(it.key().c_str()) + "'");
    }
  }

 private:
  template <typename Fn>
  void read_with(const char* key, Fn&& fn) {
    used_.insert(key);
    if (auto it = j_.find(key); it != j_.end()) fn(*it);
  }

  std::string name(const char* key) const { return where_.empty() ? key : where_ + "." + key; }

  double as_double(const Json& v, const char* key) const {
    if (!v.is_number()) throw ConfigError(name(key) + " must be a number");
    return v.get<double>();
  }
  int as_int(const Json& v, const char* key) const {
    if (!v.is_number_integer()) throw ConfigError(name(key) + " must be an integer");
    return v.get<int>();
  }

  const Json& j_;
  std::string where_;
  std::set<std::string> used_;
};

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

double angular(double value, bool two_pi, double scale) {
  return value * scale * (two_pi ? 2.0 * 3.14159265358979323846 : 1.0);
}

}  // namespace

RunConfig parse_config(const Json& j) {
  RunConfig c;
  ObjectReader r(j, "");
  r.read("protocol", c.protocol);
  r.read("n_qubits", c.n_qubits);
  r.read("source", c.source);
  r.read("target", c.target);
  r.read("amplitude", c.amplitude);
  r.read("duration", c.duration);
  r.read("g_max", c.g_max);
  r.read("samples", c.samples);
  r.read("steps", c.steps);
  r.read("record_stride", c.record_stride);
  r.read("mode", c.mode);
  r.read("model", c.model);
  r.read("jobs", c.jobs);
  r.read("out", c.out);
  r.child("noise", [&](ObjectReader& n) {
    n.read("decay_qubit", c.noise.decay_qubit);
    n.read("dephase_qubit", c.noise.dephase_qubit);
    n.read("decay_bus", c.noise.decay_bus);
    n.read("dephase_bus", c.noise.dephase_bus);
  });
  r.child("error", [&](ObjectReader& e) {
    e.read("epsilon", c.error.epsilon);
    e.read("delta", c.error.delta);
  });
  r.child("transmon", [&](ObjectReader& t) {
    t.read("omega_mhz", c.transmon.omega_mhz);
    t.read("detuning_mhz", c.transmon.detuning_mhz);
    t.read("modulation_mhz", c.transmon.modulation_mhz);
    t.read("gamma_khz", c.transmon.gamma_khz);
    t.read("two_pi", c.transmon.two_pi);
    t.read("steps_per_period", c.transmon.steps_per_period);
    t.read("drive_policy", c.transmon.drive_policy);
    t.read("waveform_samples", c.transmon.waveform_samples);
  });
  r.child("optimize", [&](ObjectReader& o) {
    o.read("protocols", c.optimize.protocols);
    o.read("a_min", c.optimize.a_min);
    o.read("a_max", c.optimize.a_max);
    o.read("a_step", c.optimize.a_step);
  });
  r.child("scan", [&](ObjectReader& s) {
    s.read("kind", c.scan.kind);
    s.read("decoherence_mode", c.scan.decoherence_mode);
    s.read("a_min", c.scan.a_min);
    s.read("a_max", c.scan.a_max);
    s.read("a_count", c.scan.a_count);
    s.read("y_min", c.scan.y_min);
    s.read("y_max", c.scan.y_max);
    s.read("y_count", c.scan.y_count);
    s.read("bus_rate", c.scan.bus_rate);
  });
  r.child("sweep", [&](ObjectReader& s) {
    s.read("n_min", c.sweep.n_min);
    s.read("n_max", c.sweep.n_max);
    s.read("physical", c.sweep.physical);
    s.read("noise_rate", c.sweep.noise_rate);
  });
  r.finish();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

Json to_json(const RunConfig& c) {
  Json j;
  j["protocol"] = c.protocol;
  j["n_qubits"] = c.n_qubits;
  j["source"] = c.source;
  j["target"] = c.target;
  j["amplitude"] = optional_json(c.amplitude);
  j["duration"] = optional_json(c.duration);
  j["g_max"] = c.g_max;
  j["samples"] = c.samples;
  j["steps"] = c.steps;
  j["record_stride"] = c.record_stride;
  j["mode"] = c.mode;
  j["model"] = c.model;
  j["jobs"] = c.jobs;
  j["out"] = c.out;
  j["noise"] = {{"decay_qubit", c.noise.decay_qubit},
                {"dephase_qubit", c.noise.dephase_qubit},
                {"decay_bus", c.noise.decay_bus},
                {"dephase_bus", c.noise.dephase_bus}};
  j["error"] = {{"epsilon", c.error.epsilon}, {"delta", c.error.delta}};
  j["transmon"] = {{"omega_mhz", c.transmon.omega_mhz},
                   {"detuning_mhz", c.transmon.detuning_mhz},
                   {"modulation_mhz", c.transmon.modulation_mhz},
                   {"gamma_khz", c.transmon.gamma_khz},
                   {"two_pi", c.transmon.two_pi},
                   {"steps_per_period", c.transmon.steps_per_period},
                   {"drive_policy", c.transmon.drive_policy},
                   {"waveform_samples", c.transmon.waveform_samples}};
  j["optimize"] = {{"protocols", c.optimize.protocols},
                   {"a_min", c.optimize.a_min},
                   {"a_max", c.optimize.a_max},
                   {"a_step", c.optimize.a_step}};
  j["scan"] = {{"kind", c.scan.kind},
               {"decoherence_mode", c.scan.decoherence_mode},
               {"a_min", c.scan.a_min},
               {"a_max", c.scan.a_max},
               {"a_count", c.scan.a_count},
               {"y_min", optional_json(c.scan.y_min)},
               {"y_max", optional_json(c.scan.y_max)},
               {"y_count", c.scan.y_count},
               {"bus_rate", optional_json(c.scan.bus_rate)}};
  j["sweep"] = {{"n_min", c.sweep.n_min},
                {"n_max", c.sweep.n_max},
                {"physical", c.sweep.physical},
                {"noise_rate", c.sweep.noise_rate}};
  return j;
}

ProtocolKind protocol_kind(const RunConfig& c) {
  try {
    return parse_protocol_kind(c.protocol);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void validate(const RunConfig& c) {
  protocol_kind(c);
  for (const std::string& p : c.optimize.protocols) {
    try {
      parse_protocol_kind(p);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("optimize.protocols: ") + e.what());
    }
  }
  if (c.mode != "dimensionless" && c.mode != "transmon") {
    throw ConfigError("mode must be 'dimensionless' or 'transmon'");
  }
  if (c.model != "effective" && c.model != "full") throw ConfigError("model must be 'effective' or 'full'");
  if (c.transmon.drive_policy != "strict" && c.transmon.drive_policy != "saturate") {
    throw ConfigError("transmon.drive_policy must be 'strict' or 'saturate'");
  }
  if (c.scan.kind != "x_error" && c.scan.kind != "z_error" && c.scan.kind != "decoherence") {
    throw ConfigError("scan.kind must be x_error, z_error or decoherence");
  }
  if (c.scan.decoherence_mode != "uniform" && c.scan.decoherence_mode != "bus_fixed") {
    throw ConfigError("scan.decoherence_mode must be uniform or bus_fixed");
  }
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (c.samples < 2) throw ConfigError("samples must be at least 2");
  if (c.record_stride < 1) throw ConfigError("record_stride must be at least 1");
  if (c.scan.a_count < 1 || c.scan.y_count < 1) throw ConfigError("scan counts must be positive");
  if (c.sweep.n_min < 3 || c.sweep.n_max < c.sweep.n_min) {
    throw ConfigError("sweep needs 3 <= n_min <= n_max");
  }
  try {
    ProtocolSpec spec = protocol_template(c);
    spec.amplitude = c.amplitude.value_or(1.0);
    spec.duration = c.duration.value_or(1.0);
    spec.validate();
    noise_model(c).validate(c.n_qubits);
    if (transmon_mode(c)) transmon_params(c).validate(c.n_qubits);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ProtocolSpec protocol_template(const RunConfig& c) {
  ProtocolSpec spec;
  spec.kind = protocol_kind(c);
  spec.n_qubits = c.n_qubits;
  spec.source = c.source;
  spec.target = c.target;
  spec.g_max = c.g_max;
  if (c.amplitude) spec.amplitude = *c.amplitude;
  if (c.duration) spec.duration = *c.duration;
  return spec;
}

NoiseModel noise_model(const RunConfig& c) {
  NoiseModel noise;
  const auto n = static_cast<std::size_t>(std::max(c.n_qubits, 0));
  noise.decay_qubit.assign(n, c.noise.decay_qubit);
  noise.dephase_qubit.assign(n, c.noise.dephase_qubit);
  noise.decay_bus = c.noise.decay_bus;
  noise.dephase_bus = c.noise.dephase_bus;
  return noise;
}

TransmonParams transmon_params(const RunConfig& c) {
  const auto& t = c.transmon;
  TransmonParams p;
  const auto n = static_cast<std::size_t>(std::max(c.n_qubits, 0));
  p.omega.assign(n, angular(t.omega_mhz, t.two_pi, 1e-3));
  p.detuning.assign(n, angular(t.detuning_mhz, t.two_pi, 1e-3));
  p.modulation.assign(n, angular(t.modulation_mhz, t.two_pi, 1e-3));
  p.noise = NoiseModel::uniform(c.n_qubits, angular(t.gamma_khz, t.two_pi, 1e-6));
  p.steps_per_period = t.steps_per_period;
  return p;
}

DrivePolicy drive_policy(const RunConfig& c) {
  return c.transmon.drive_policy == "saturate" ? DrivePolicy::kSaturate : DrivePolicy::kStrict;
}

PhysicalModel physical_model(const RunConfig& c) {
  return c.model == "effective" ? PhysicalModel::kEffective : PhysicalModel::kFull;
}

bool transmon_mode(const RunConfig& c) { return c.mode == "transmon"; }

}  // namespace darkpath::cli
