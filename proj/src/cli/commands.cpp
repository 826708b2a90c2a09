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

#include "darkpath/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "darkpath/cli/config.hpp"
#include "darkpath/dynamics.hpp"
#include "darkpath/io.hpp"
#include "darkpath/optimize.hpp"
#include "darkpath/pulse_design.hpp"
#include "darkpath/scans.hpp"
#include "darkpath/transmon.hpp"

namespace darkpath::cli {

namespace fs = std::filesystem;

namespace {

// Diagnostic bounds a simulation must meet for exit code 0.
constexpr double kTraceContract = 1e-8;
constexpr double kHermiticityContract = 1e-10;
constexpr double kEigenvalueContract = -1e-8;
constexpr double kPopulationContract = 1e-8;
constexpr double kNormContract = 1e-8;

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> steps;
  std::optional<std::string> mode;
  std::optional<std::string> model;
  std::optional<int> jobs;
};

RunConfig load(const Flags& flags) {
  RunConfig c = flags.config.empty() ? RunConfig{} : load_config(flags.config);
  if (flags.out) c.out = *flags.out;
  if (flags.steps) c.steps = *flags.steps;
  if (flags.mode) c.mode = *flags.mode;
  if (flags.model) c.model = *flags.model;
  if (flags.jobs) c.jobs = *flags.jobs;
  validate(c);
  return c;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

fs::path prepare_out(const RunConfig& c) {
  fs::path dir(c.out);
  fs::create_directories(dir);
  return dir;
}

AmplitudeBracket bracket(const RunConfig& c) {
  AmplitudeBracket b;
  b.lo = c.optimize.a_min;
  b.hi = c.optimize.a_max;
  b.coarse_step = c.optimize.a_step;
  return b;
}

// Template with g_max in the units of the selected mode.
ProtocolSpec mode_template(const RunConfig& c) {
  ProtocolSpec tmpl = protocol_template(c);
  if (transmon_mode(c)) tmpl = physical_spec(tmpl, transmon_params(c));
  return tmpl;
}

// Fills in amplitude and duration and records them in the config so the
// metadata carries the values actually used.
ProtocolSpec resolve_spec(RunConfig& c) {
  ProtocolSpec spec = mode_template(c);
  if (!c.amplitude) c.amplitude = optimal_amplitude(spec, bracket(c), c.jobs).amplitude;
  if (!c.duration) c.duration = minimal_duration(spec, *c.amplitude);
  c.g_max = spec.g_max;
  spec.amplitude = *c.amplitude;
  spec.duration = *c.duration;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

Json spec_json(const ProtocolSpec& s) {
  return {{"protocol", std::string(to_string(s.kind))},
          {"n_qubits", s.n_qubits},
          {"source", s.source},
          {"target", s.target},
          {"amplitude", s.amplitude},
          {"duration", s.duration},
          {"g_max", s.g_max},
          {"theta", s.theta()}};
}

Json diagnostics_json(const Diagnostics& d) {
  return {{"max_trace_deviation", d.max_trace_deviation},
          {"max_hermiticity_deviation", d.max_hermiticity_deviation},
          {"min_eigenvalue", d.min_eigenvalue},
          {"max_norm_deviation", d.max_norm_deviation},
          {"max_population_sum", d.max_population_sum},
          {"max_reference_infidelity", d.max_reference_infidelity}};
}

bool within_contract(const Diagnostics& d) {
  return d.max_trace_deviation < kTraceContract && d.max_hermiticity_deviation < kHermiticityContract &&
         d.min_eigenvalue >= kEigenvalueContract && d.max_population_sum <= 1.0 + kPopulationContract &&
         d.max_norm_deviation < kNormContract;
}

std::string time_column(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kQst:
      return "T_S";
    case ProtocolKind::kPairEsg:
      return "T_E";
    case ProtocolKind::kAllEsg:
      return "T_prime";
  }
  return "T";
}

PhysicalOptions physical_options(const RunConfig& c) {
  PhysicalOptions o;
  o.policy = drive_policy(c);
  o.effective_steps = c.steps;
  o.waveform_samples = c.transmon.waveform_samples;
  o.record_stride = c.record_stride;
  return o;
}

int cmd_design(RunConfig c, std::ostream& out) {
  const ProtocolSpec spec = resolve_spec(c);
  const PulseSchedule schedule = synthesize(spec, c.samples);
  if (!schedule.within_cap()) {
    throw NumericalError("peak coupling " + io::format_double(schedule.peak_coupling) + " exceeds g_max " +
                         io::format_double(spec.g_max) + "; lengthen the duration");
  }
  const auto grid = uniform_grid(0.0, spec.duration, c.samples);
  const PathwayReport report = verify_pathway(spec, grid);

  const fs::path dir = prepare_out(c);
  io::write_schedule_csv(dir / "schedule.csv", schedule);
  Json meta;
  meta["command"] = "design";
  meta["config"] = to_json(c);
  meta["spec"] = spec_json(spec);
  meta["peak_coupling"] = schedule.peak_coupling;
  meta["within_cap"] = schedule.within_cap();
  meta["pathway"] = {{"max_norm_error", report.max_norm_error},
                     {"max_energy_expectation", report.max_energy_expectation},
                     {"max_schrodinger_residual", report.max_schrodinger_residual}};
  write_json(dir / "design.json", meta);
  out << "design: " << to_string(spec.kind) << " A=" << spec.amplitude << " T=" << spec.duration
      << " peak=" << schedule.peak_coupling << "\n";
  return kExitOk;
}

int cmd_optimize(RunConfig c, std::ostream& out) {
  const auto& o = c.optimize;
  if (o.protocols.empty()) throw ConfigError("optimize.protocols is empty");
  if (!(o.a_step > 0.0) || !(o.a_max > o.a_min)) throw ConfigError("optimize needs a_min < a_max and a_step > 0");
  const int count = static_cast<int>(std::floor((o.a_max - o.a_min) / o.a_step + 1e-9)) + 1;
  std::vector<double> amplitudes(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) amplitudes[static_cast<std::size_t>(i)] = o.a_min + i * o.a_step;

  std::vector<std::string> columns;
  std::vector<TimeCurve> curves;
  Json results = Json::array();
  for (const std::string& name : o.protocols) {
    RunConfig pc = c;
    pc.protocol = name;
    ProtocolSpec tmpl = mode_template(pc);
    const OptimalAmplitude best = optimal_amplitude(tmpl, bracket(c), c.jobs);
    curves.push_back(time_curve(tmpl, amplitudes, c.jobs));
    columns.push_back(time_column(tmpl.kind));
    results.push_back({{"protocol", name},
                       {"optimal_amplitude", best.amplitude},
                       {"minimal_duration", best.duration},
                       {"peak", best.peak},
                       {"g_max", tmpl.g_max}});
    out << "optimize: " << name << " A*=" << best.amplitude << " T*=" << best.duration << "\n";
  }

  const fs::path dir = prepare_out(c);
  io::write_time_curves_csv(dir / "time_curve.csv", columns, curves);
  Json meta;
  meta["command"] = "optimize";
  meta["config"] = to_json(c);
  meta["results"] = results;
  write_json(dir / "optimize.json", meta);
  return kExitOk;
}

int cmd_simulate(RunConfig c, std::ostream& out) {
  const ProtocolSpec spec = resolve_spec(c);
  SimulationResult result;
  int steps = c.steps;
  Json extra = Json::object();
  if (transmon_mode(c)) {
    PhysicalRun run = simulate_physical(spec, transmon_params(c), physical_model(c), physical_options(c));
    steps = run.steps;
    extra["saturated_samples"] = run.waveform.saturated_samples;
    extra["max_request_ratio"] = run.waveform.max_request_ratio;
    result = std::move(run.result);
  } else {
    const NoiseModel noise = noise_model(c);
    if (noise.is_noiseless()) {
      result = propagate_schrodinger(spec, c.error, initial_state(spec), steps, c.record_stride);
    } else {
      result = propagate_lindblad(spec, c.error, noise, pure_density(initial_state(spec)), steps, c.record_stride);
    }
  }
  const bool ok = within_contract(result.diagnostics);

  const fs::path dir = prepare_out(c);
  io::write_trajectory_csv(dir / "trajectory.csv", result);
  Json meta;
  meta["command"] = "simulate";
  meta["config"] = to_json(c);
  meta["spec"] = spec_json(spec);
  meta["steps"] = steps;
  meta["final_fidelity"] = result.final_fidelity;
  meta["diagnostics"] = diagnostics_json(result.diagnostics);
  meta["within_contract"] = ok;
  for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
  write_json(dir / "summary.json", meta);
  out << "simulate: " << to_string(spec.kind) << " F=" << io::format_double(result.final_fidelity) << "\n";
  return ok ? kExitOk : kExitNumerical;
}

int cmd_scan(RunConfig c, std::ostream& out) {
  if (transmon_mode(c)) throw ConfigError("scan runs in dimensionless mode only");
  const auto& s = c.scan;
  const ProtocolSpec tmpl = protocol_template(c);
  const double g = tmpl.g_max;
  const auto amplitudes = linspace(s.a_min, s.a_max, s.a_count);
  const ScanOptions opts{c.steps, c.jobs};

  ScanGrid grid;
  if (s.kind == "x_error") {
    const auto ys = linspace(s.y_min.value_or(-0.1), s.y_max.value_or(0.1), s.y_count);
    grid = scan_x_error(tmpl, amplitudes, ys, opts);
  } else if (s.kind == "z_error") {
    const auto ys = linspace(s.y_min.value_or(-0.1 * g), s.y_max.value_or(0.1 * g), s.y_count);
    grid = scan_z_error(tmpl, amplitudes, ys, opts);
  } else {
    const auto ys = linspace(s.y_min.value_or(0.0), s.y_max.value_or(g / 1000.0), s.y_count);
    const DecoherenceMode mode =
        s.decoherence_mode == "bus_fixed" ? DecoherenceMode::kBusFixed : DecoherenceMode::kUniform;
    grid = scan_decoherence(tmpl, amplitudes, ys, mode, s.bus_rate.value_or(g / 1000.0), opts);
  }

  const fs::path dir = prepare_out(c);
  io::write_heatmap_csv(dir / "heatmap.csv", grid);
  Json meta;
  meta["command"] = "scan";
  meta["config"] = to_json(c);
  meta["protocol"] = std::string(to_string(tmpl.kind));
  meta["kind"] = s.kind;
  meta["x_name"] = grid.x_name;
  meta["y_name"] = grid.y_name;
  meta["x_values"] = grid.x_values;
  meta["y_values"] = grid.y_values;
  meta["steps"] = c.steps;
  meta["min_fidelity"] = grid.fidelity.minCoeff();
  meta["max_fidelity"] = grid.fidelity.maxCoeff();
  write_json(dir / "scan.json", meta);
  out << "scan: " << s.kind << " " << grid.y_values.size() << "x" << grid.x_values.size() << "\n";
  return kExitOk;
}

int cmd_sweep(RunConfig c, std::ostream& out) {
  const TransmonParams params = transmon_params(c);
  SweepOptions o;
  o.physical = c.sweep.physical;
  o.steps = c.steps;
  o.noise_rate = c.sweep.noise_rate;
  o.omega = params.omega.front();
  o.detuning = params.detuning.front();
  o.modulation = params.modulation.front();
  o.gamma = params.noise.decay_bus;
  o.steps_per_period = params.steps_per_period;
  o.model = physical_model(c);
  o.policy = drive_policy(c);
  o.jobs = c.jobs;
  const auto rows = sweep_qubit_count(c.sweep.n_min, c.sweep.n_max, o);

  const fs::path dir = prepare_out(c);
  io::write_sweep_csv(dir / "sweep.csv", rows);
  Json table = Json::array();
  for (const SweepRow& r : rows) {
    table.push_back({{"n_qubits", r.n_qubits}, {"amplitude", r.amplitude}, {"duration", r.duration},
                     {"fidelity", r.fidelity}});
    out << "sweep-n: N=" << r.n_qubits << " F=" << io::format_double(r.fidelity) << "\n";
  }
  Json meta;
  meta["command"] = "sweep-n";
  meta["config"] = to_json(c);
  meta["rows"] = table;
  write_json(dir / "sweep.json", meta);
  return kExitOk;
}

int cmd_transmon(RunConfig c, std::ostream& out) {
  c.mode = "transmon";
  const ProtocolSpec spec = resolve_spec(c);
  const TransmonParams params = transmon_params(c);
  const DriveWaveform waveform = design_physical(spec, params, drive_policy(c), c.transmon.waveform_samples);
  PhysicalRun run = simulate_physical(spec, params, physical_model(c), physical_options(c));
  const bool ok = within_contract(run.result.diagnostics);

  std::vector<int> flagged;
  for (int j = 0; j < waveform.phase_flag.cols(); ++j) {
    if (waveform.phase_flag.col(j).any()) flagged.push_back(j + 1);
  }

  const fs::path dir = prepare_out(c);
  io::write_waveform_csv(dir / "waveform.csv", waveform);
  io::write_trajectory_csv(dir / "trajectory.csv", run.result);
  Json meta;
  meta["command"] = "transmon";
  meta["config"] = to_json(c);
  meta["spec"] = spec_json(spec);
  meta["coupling_cap"] = params.coupling_cap();
  meta["max_eta"] = waveform.eta.cwiseAbs().maxCoeff();
  meta["saturated_samples"] = waveform.saturated_samples;
  meta["max_request_ratio"] = waveform.max_request_ratio;
  meta["phase_flag_qubits"] = flagged;
  meta["model"] = c.model;
  meta["steps"] = run.steps;
  meta["final_fidelity"] = run.result.final_fidelity;
  meta["diagnostics"] = diagnostics_json(run.result.diagnostics);
  meta["within_contract"] = ok;
  write_json(dir / "transmon.json", meta);
  out << "transmon: " << to_string(spec.kind) << " T=" << spec.duration << " ns F="
      << io::format_double(run.result.final_fidelity) << "\n";
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dark-pathway pulse design and simulation"};
  app.require_subcommand(1);
  Flags flags;
  std::function<int(RunConfig, std::ostream&)> action;

  auto add = [&](const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--steps", flags.steps, "integrator steps");
    sub->add_option("--mode", flags.mode, "dimensionless or transmon")
        ->check(CLI::IsMember({"dimensionless", "transmon"}));
    sub->add_option("--model", flags.model, "effective or full")->check(CLI::IsMember({"effective", "full"}));
    sub->add_option("--jobs", flags.jobs, "worker threads");
    sub->callback([&action, fn] { action = fn; });
  };
  add("design", "write the coupling schedule", cmd_design);
  add("optimize", "minimal-time amplitude per protocol", cmd_optimize);
  add("simulate", "populations and fidelity over time", cmd_simulate);
  add("scan", "robustness heatmap", cmd_scan);
  add("sweep-n", "QST fidelity versus qubit count", cmd_sweep);
  add("transmon", "modulation waveform and physical simulation", cmd_transmon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config = load(flags);
    return action(std::move(config), out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InfeasibleDrive& e) {
    err << "infeasible drive: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace darkpath::cli
