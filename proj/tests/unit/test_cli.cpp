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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <doctest.h>

#include "darkpath/cli/commands.hpp"
#include "darkpath/cli/config.hpp"

namespace fs = std::filesystem;
using darkpath::cli::Json;

namespace {

struct Sandbox {
  fs::path root;
  Sandbox() {
    static int counter = 0;
    root = fs::temp_directory_path() / ("darkpath_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Sandbox() { fs::remove_all(root); }

  fs::path write_config(const std::string& name, const Json& j) const {
    const fs::path p = root / name;
    std::ofstream(p) << j.dump();
    return p;
  }
};

int invoke(const std::vector<std::string>& args, std::string* err_text = nullptr) {
  std::vector<const char*> argv{"darkpath"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = darkpath::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config round trip keeps every field") {
  Json j = {{"protocol", "pair_esg"},
            {"amplitude", 0.7},
            {"noise", {{"decay_bus", 0.001}}},
            {"transmon", {{"omega_mhz", 20.0}, {"drive_policy", "saturate"}}},
            {"scan", {{"kind", "z_error"}, {"y_min", -0.2}}}};
  const auto c = darkpath::cli::parse_config(j);
  CHECK(c.protocol == "pair_esg");
  CHECK(*c.amplitude == 0.7);
  CHECK_FALSE(c.duration.has_value());
  CHECK(c.noise.decay_bus == 0.001);
  CHECK(c.transmon.omega_mhz == 20.0);
  CHECK(c.steps == 4001);
  const Json full = darkpath::cli::to_json(c);
  CHECK(full["duration"].is_null());
  CHECK(darkpath::cli::to_json(darkpath::cli::parse_config(full)) == full);
}

TEST_CASE("config rejects unknown keys and wrong types") {
  using darkpath::cli::ConfigError;
  CHECK_THROWS_AS(darkpath::cli::parse_config(Json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(darkpath::cli::parse_config(Json{{"noise", {{"decay", 1}}}}), ConfigError);
  CHECK_THROWS_AS(darkpath::cli::parse_config(Json{{"steps", 1.5}}), ConfigError);
  CHECK_THROWS_AS(darkpath::cli::parse_config(Json{{"protocol", 3}}), ConfigError);
  CHECK_THROWS_AS(darkpath::cli::parse_config(Json::array()), ConfigError);
  auto c = darkpath::cli::parse_config(Json{{"protocol", "teleport"}});
  CHECK_THROWS_AS(darkpath::cli::validate(c), ConfigError);
  c = darkpath::cli::parse_config(Json{{"target", 1}});
  CHECK_THROWS_AS(darkpath::cli::validate(c), ConfigError);
}

TEST_CASE("transmon units from the config") {
  auto c = darkpath::cli::parse_config(Json{{"transmon", {{"omega_mhz", 17.0}, {"gamma_khz", 5.0}}}});
  auto p = darkpath::cli::transmon_params(c);
  CHECK(p.omega[0] == doctest::Approx(2.0 * 3.141592653589793 * 0.017));
  CHECK(p.noise.dephase_qubit[2] == doctest::Approx(2.0 * 3.141592653589793 * 5e-6));
  c.transmon.two_pi = false;
  p = darkpath::cli::transmon_params(c);
  CHECK(p.omega[0] == doctest::Approx(0.017));
}

TEST_CASE("design with defaults") {
  Sandbox box;
  const fs::path out = box.root / "design";
  REQUIRE(invoke({"design", "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "schedule.csv"));
  CHECK(fs::exists(out / "design.json"));
  const auto rows = read_csv(out / "schedule.csv");
  CHECK(rows.front() == std::vector<std::string>{"t", "g_1", "g_2", "g_3"});
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::stod(rows[1][k]) == 0.0);
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(std::stod(rows.back()[k])) < 1e-12);
  const Json meta = read_json(out / "design.json");
  CHECK(meta["within_cap"] == true);
  CHECK(meta["pathway"]["max_schrodinger_residual"].get<double>() < 1e-8);
  CHECK(meta["config"]["amplitude"].is_number());
  CHECK(meta["config"]["steps"] == 4001);
}

TEST_CASE("bad config key writes nothing") {
  Sandbox box;
  const fs::path cfg = box.write_config("bad.json", {{"protocl", "qst"}});
  const fs::path out = box.root / "never";
  std::string err;
  CHECK(invoke({"design", "--config", cfg.string(), "--out", out.string()}, &err) == 2);
  CHECK(err.find("protocl") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  CHECK(invoke({"simulate", "--mode", "quantum", "--out", out.string()}) == 2);
  CHECK(invoke({"teleport"}) == 2);
  CHECK(invoke({"design", "--config", (box.root / "missing.json").string()}) == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("design refuses a duration below the cap") {
  Sandbox box;
  const fs::path cfg = box.write_config("short.json", {{"amplitude", 0.76}, {"duration", 2.0}});
  CHECK(invoke({"design", "--config", cfg.string(), "--out", (box.root / "d").string()}) == 1);
}

TEST_CASE("noiseless simulation") {
  Sandbox box;
  const fs::path cfg = box.write_config("sim.json", {{"amplitude", 0.7365}, {"duration", 3.0}});
  const fs::path out = box.root / "sim";
  REQUIRE(invoke({"simulate", "--config", cfg.string(), "--out", out.string()}) == 0);
  const Json s = read_json(out / "summary.json");
  CHECK(s["final_fidelity"].get<double>() > 0.9999);
  CHECK(s["within_contract"] == true);
  const auto rows = read_csv(out / "trajectory.csv");
  CHECK(rows.front() == std::vector<std::string>{"t", "pop_G", "pop_1", "pop_2", "pop_3", "pop_a", "fidelity"});
  CHECK(rows.size() == 4003);
  for (std::size_t r = 1; r < rows.size(); r += 97) {
    double sum = 0.0;
    for (std::size_t k = 1; k <= 5; ++k) sum += std::stod(rows[r][k]);
    CHECK(sum <= 1.0 + 1e-8);
  }
}

TEST_CASE("flags override the config") {
  Sandbox box;
  const fs::path cfg = box.write_config("sim.json", {{"amplitude", 0.7}, {"duration", 3.0}, {"steps", 500}});
  const fs::path out = box.root / "sim";
  REQUIRE(invoke({"simulate", "--config", cfg.string(), "--out", out.string(), "--steps", "800"}) == 0);
  const Json s = read_json(out / "summary.json");
  CHECK(s["steps"] == 800);
  CHECK(s["config"]["steps"] == 800);
  CHECK(s["config"]["out"] == out.string());
}

TEST_CASE("identical runs give identical bytes") {
  Sandbox box;
  const fs::path cfg = box.write_config(
      "scan.json", {{"protocol", "all_esg"},
                    {"noise", {{"decay_qubit", 1e-3}, {"dephase_bus", 1e-3}}},
                    {"amplitude", 0.65},
                    {"scan", {{"kind", "decoherence"}, {"a_count", 4}, {"y_count", 3}}}});
  for (const std::string cmd : {"simulate", "scan"}) {
    const fs::path out = box.root / cmd;
    REQUIRE(invoke({cmd, "--config", cfg.string(), "--out", out.string(), "--jobs", "1"}) == 0);
    std::vector<std::pair<fs::path, std::string>> first;
    for (const auto& entry : fs::directory_iterator(out)) first.emplace_back(entry.path(), slurp(entry.path()));
    fs::remove_all(out);
    REQUIRE(invoke({cmd, "--config", cfg.string(), "--out", out.string(), "--jobs", "1"}) == 0);
    CHECK(first.size() == 2);
    for (const auto& [path, bytes] : first) CHECK(slurp(path) == bytes);
  }
  // worker count changes nothing but the recorded config
  const fs::path c = box.root / "scan_c";
  REQUIRE(invoke({"scan", "--config", cfg.string(), "--out", c.string(), "--jobs", "3"}) == 0);
  CHECK(slurp(c / "heatmap.csv") == slurp(box.root / "scan" / "heatmap.csv"));
}

TEST_CASE("scan output layout") {
  Sandbox box;
  const fs::path cfg = box.write_config("scan.json", {{"scan", {{"a_count", 3}, {"y_count", 5}}}});
  const fs::path out = box.root / "scan";
  REQUIRE(invoke({"scan", "--config", cfg.string(), "--out", out.string()}) == 0);
  const auto rows = read_csv(out / "heatmap.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].size() == 4);
  CHECK(std::stod(rows[1][0]) == -0.1);
  CHECK(std::stod(rows[5][0]) == 0.1);
  CHECK(std::stod(rows[0][1]) == 0.3);
  const Json meta = read_json(out / "scan.json");
  CHECK(meta["protocol"] == "qst");
  CHECK(meta["y_name"] == "epsilon");
  CHECK(meta["steps"] == 4001);
  CHECK(invoke({"scan", "--mode", "transmon", "--out", (box.root / "x").string()}) == 2);
}

TEST_CASE("single-protocol optimize") {
  Sandbox box;
  const fs::path cfg = box.write_config("opt.json", {{"optimize", {{"protocols", {"all_esg"}}, {"a_min", 0.3}, {"a_max", 1.0}}}});
  const fs::path out = box.root / "opt";
  REQUIRE(invoke({"optimize", "--config", cfg.string(), "--out", out.string()}) == 0);
  const auto rows = read_csv(out / "time_curve.csv");
  CHECK(rows.front() == std::vector<std::string>{"A", "T_prime"});
  CHECK(rows.size() == 72);
  const Json meta = read_json(out / "optimize.json");
  CHECK(meta["results"].size() == 1);
  CHECK(meta["results"][0]["optimal_amplitude"].get<double>() > 0.3);
}

TEST_CASE("transmon command") {
  Sandbox box;
  const fs::path strict = box.write_config("strict.json", {{"amplitude", 0.7365}, {"duration", 48.4}});
  CHECK(invoke({"transmon", "--config", strict.string(), "--out", (box.root / "s").string()}) == 1);

  const fs::path sat = box.write_config(
      "sat.json", {{"amplitude", 0.7365}, {"duration", 48.4}, {"transmon", {{"drive_policy", "saturate"}}}});
  const fs::path out = box.root / "t";
  REQUIRE(invoke({"transmon", "--config", sat.string(), "--out", out.string(), "--model", "effective"}) == 0);
  const auto rows = read_csv(out / "waveform.csv");
  CHECK(rows.front() == std::vector<std::string>{"t_ns", "eta_1", "eta_2", "eta_3", "phase_flag_1", "phase_flag_2",
                                                 "phase_flag_3"});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    for (std::size_t k = 1; k <= 3; ++k) CHECK(std::stod(rows[r][k]) <= 1.8412);
  }
  const Json meta = read_json(out / "transmon.json");
  CHECK(meta["phase_flag_qubits"] == Json::array({2}));
  CHECK(meta["saturated_samples"].get<int>() > 0);
}

}  // TEST_SUITE
