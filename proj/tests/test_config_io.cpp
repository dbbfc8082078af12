#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "bgl/config.hpp"
#include "bgl/error.hpp"
#include "bgl/io.hpp"
#include "bgl/run.hpp"
#include "bgl/symmetry.hpp"

using namespace bgl;
namespace fs = std::filesystem;

namespace {

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto& names = scenario_names();
  RunConfig c;
  c.scenario.name = names[rng() % names.size()];
  const Model m = scenario_model(c.scenario.name);
  c.model = model_tag(m);
  c.nu = m == Model::torus_viscous ? 1e-4 + U(rng) : 0.0;
  c.cfl = 0.05 + 0.95 * U(rng);
  c.dt_max = 1e-3 + U(rng) / 7.0;
  c.horizon = 10.0 * U(rng);
  c.output_interval = 1e-3 + U(rng) / 3.0;
  c.out_dir = "run_" + std::to_string(rng() % 1000);
  c.seed = rng();
  c.scenario.seed = c.seed;
  const int k = 5 + static_cast<int>(rng() % 3);
  c.n1 = m == Model::axisym_euler ? (1 << k) + 1 : 1 << k;
  c.n2 = m == Model::strip_inviscid ? (1 << (k - 1)) + 1 : 1 << k;
  c.scenario.amplitude = 0.1 + 3.0 * U(rng);
  c.scenario.alpha = U(rng) - 0.5;
  c.scenario.modulation = U(rng) / 3.0;
  c.scenario.perturbation = U(rng) / 50.0;
  c.diagnostics.s_list.clear();
  for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i) c.diagnostics.s_list.push_back(0.5 + 3.0 * U(rng));
  c.diagnostics.p_list = {1.0 + 5.0 * U(rng)};
  if (rng() % 2) c.diagnostics.p_list.push_back(kInf);
  c.checkpoint_times.clear();
  for (int i = 0, n = static_cast<int>(rng() % 3); i < n; ++i) c.checkpoint_times.push_back(c.horizon * U(rng));
  return c;
}

RunConfig small_run(const std::string& scenario, double horizon) {
  RunConfig c = parse_config("[scenario]\nname = " + scenario + "\n");
  c.n1 = scenario == "axisym-3d" ? 33 : 32;
  c.n2 = scenario == "strip-invB" ? 17 : 32;
  c.horizon = horizon;
  c.output_interval = 0.1;
  return c;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bgl_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config defaults and errors") {
  const RunConfig d = parse_config("");
  CHECK(d == RunConfig{});
  CHECK(d.scenario.name == "inviscid-t2");
  CHECK(d.model == "torus-inviscid");
  CHECK(parse_config("# only a comment\n\n") == d);

  CHECK_THROWS_WITH_AS(parse_config("nu = -1\n"), "nu must be ≥ 0", ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[run]\nbogus = 1\n"), doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[run]\ncfl = 0.3\ncfl = 0.4\n"), doctest::Contains("duplicate"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[run]\ncfl = abc\n"), doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[nowhere]\n"), doctest::Contains("line 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nname = viscous-t2\n[run]\nnu = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nmodel = strip-inviscid\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[diagnostics]\np_list = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nhorizon = 1\n[checkpoints]\ntimes = 2\n"), ConfigError);

  const RunConfig v = parse_config("[scenario]\nname = viscous-t2\n");
  CHECK(v.nu == 0.01);
  CHECK(v.model == "torus-viscous");
  const RunConfig p = parse_config("[diagnostics]\np_list = 1, inf\n");
  CHECK(std::isinf(p.diagnostics.p_list[1]));
}

TEST_CASE("config round trip on 50 random configs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const RunConfig c = random_config(rng);
    validate_config(c);
    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("CSV header is the frozen column list") {
  const std::string golden = read_file(BGL_TEST_DATA_DIR "/golden/series_header.csv");
  CHECK(csv_header_line(DiagnosticsConfig{}) == golden);
}

TEST_CASE("CSV and checkpoint round trips") {
  const RunConfig c = small_run("inviscid-t2", 0.3);
  const RunResult r = run_simulation(c);
  const std::string csv = series_csv(r.series, c.diagnostics);
  const CsvTable t = parse_csv(csv);
  REQUIRE(t.rows.size() == r.series.size());
  for (std::size_t i = 0; i < r.series.size(); ++i) {
    const auto v = csv_values(r.series[i]);
    for (std::size_t j = 0; j < v.size(); ++j) {
      CHECK(t.rows[i][j].has_value() == v[j].has_value());
      if (v[j]) CHECK(*t.rows[i][j] == *v[j]);
    }
  }
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), InputError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), InputError);

  for (const auto& name : scenario_names()) {
    const RunResult rr = run_simulation(small_run(name, 0.0));
    ScenarioSpec spec;
    spec.name = name;
    const Scenario sc = make_scenario(spec, state_grid(*rr.final_state));
    const Checkpoint ck{scenario_model(name), name == "viscous-t2" ? 0.01 : 0.0, sc.state, sc.tracers};
    const std::string bytes = encode_checkpoint(ck);
    const Checkpoint back = decode_checkpoint(bytes);
    CHECK(back.model == ck.model);
    CHECK(back.nu == ck.nu);
    CHECK(encode_checkpoint(back) == bytes);
    CHECK(back.tracers.has_value() == ck.tracers.has_value());
    CHECK_THROWS_AS(decode_checkpoint(bytes.substr(0, bytes.size() - 3)), IoError);
  }
  CHECK_THROWS_AS(decode_checkpoint("XYZ1 torus-inviscid 16 16 0 0\n"), IoError);
  CHECK_THROWS_AS(decode_checkpoint("no newline"), IoError);
  CHECK_THROWS_AS(read_file("/nonexistent/dir/file"), IoError);
}

TEST_CASE("simulate: horizon 0, diagnose round trip, byte-identical reruns") {
  {
    RunConfig c = small_run("strip-invB", 0.0);
    const RunResult r = run_simulation(c);
    REQUIRE(r.series.size() == 1);
    CHECK(r.series[0].t == 0.0);
    CHECK(r.steps == 0);
    CHECK(r.monitors.bounds.empty());
  }
  for (const std::string name : {"viscous-t2", "inviscid-t2", "strip-invB", "axisym-3d"}) {
    RunConfig c = small_run(name, 0.5);
    c.checkpoint_times = {0.0, 0.2, 0.35};
    const auto d1 = temp_dir("a_" + name), d2 = temp_dir("b_" + name);
    std::ostringstream log1, log2;
    const int rc1 = simulate(c, d1.string(), true, log1);
    const int rc2 = simulate(c, d2.string(), true, log2);
    CHECK(rc1 == rc2);
    CHECK(rc1 != kExitError);
    CHECK(log1.str() == log2.str());
    for (const auto& e : fs::directory_iterator(d1)) {
      CHECK(read_file(e.path().string()) == read_file((d2 / e.path().filename()).string()));
    }
    CHECK(fs::exists(d1 / "series.csv"));
    CHECK(fs::exists(d1 / "summary.txt"));
    CHECK(fs::exists(d1 / "plot_E_K.svg"));

    const CsvTable t = parse_csv(read_file((d1 / "series.csv").string()));
    // checkpoint at 0.2 is an output time: diagnose must reproduce its row
    const Checkpoint ck = read_checkpoint((d1 / "checkpoint_0.200000.bgl").string());
    CHECK(state_time(ck.state) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(fs::exists(d1 / "checkpoint_0.350000.bgl"));
    CHECK(fs::exists(d1 / "checkpoint_0.000000.bgl"));
    const auto v = csv_values(diagnose(ck, c.diagnostics));
    const std::size_t row = 2;
    REQUIRE(t.rows.size() == 6);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j]) continue;
      REQUIRE(t.rows[row][j].has_value());
      INFO(name << " column " << t.columns[j]);
      CHECK(std::abs(*v[j] - *t.rows[row][j]) <= 1e-12 * std::max(1.0, std::abs(*v[j])));
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
  }
}

TEST_CASE("exit status mapping") {
  RunResult r;
  CHECK(r.exit_status() == kExitOk);
  r.assumptions.clauses.push_back({"x", false, ""});
  CHECK(r.exit_status() == kExitInvariant);
  r.blowup_time = 1.0;
  CHECK(r.exit_status() == kExitBlowup);

  RunConfig c = small_run("inviscid-t2", 0.1);
  c.out_dir = "x";
  std::ostringstream log;
  CHECK(simulate(c, "/proc/forbidden/dir", false, log) == kExitError);
  CHECK(log.str().find("error") != std::string::npos);
}
