// bgl: simulate, gen-data, verify, diagnose.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

#include "bgl/error.hpp"
#include "bgl/lemma_lab.hpp"
#include "bgl/run.hpp"

namespace {

int cmd_simulate(const std::string& config_path, std::string out, bool svg) {
  const bgl::RunConfig cfg = bgl::load_config(config_path);
  if (out.empty()) out = cfg.out_dir;
  return bgl::simulate(cfg, out, svg, std::cout);
}

int cmd_gen_data(const std::string& name, const std::string& out, int n1, int n2, std::uint64_t seed,
                 double perturbation) {
  bgl::ScenarioSpec spec;
  spec.name = name;
  spec.seed = seed;
  spec.perturbation = perturbation;
  auto [d1, d2] = bgl::scenario_default_grid(name);
  const bgl::Grid g = bgl::scenario_grid(name, n1 > 0 ? n1 : d1, n2 > 0 ? n2 : d2);
  const bgl::Scenario sc = bgl::make_scenario(spec, g);
  const auto report = bgl::validate_assumptions(sc.state, spec);
  for (const auto& c : report.clauses) std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
  const bgl::Model m = bgl::scenario_model(name);
  const double nu = m == bgl::Model::torus_viscous ? 0.01 : 0.0;
  bgl::write_checkpoint(out, {m, nu, sc.state, sc.tracers});
  std::cout << fmt::format("wrote {} (k0 = {})\n", out, sc.k0);
  return report.ok() ? bgl::kExitOk : bgl::kExitInvariant;
}

int cmd_verify(const std::string& kind, int samples, std::uint64_t seed, int resolution, int threads) {
  bgl::SuiteOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.threads = threads;
  if (resolution > 0) opt.resolution = resolution;
  std::vector<bgl::LemmaReport> reports;
  if (kind == "omega-lp") reports = bgl::run_omega_lp_suite(opt);
  else if (kind == "smallinx1-a") reports = bgl::run_smallinx1_a_suite(opt);
  else reports = bgl::run_smallinx1_b_suite(opt);
  std::cout << bgl::report_csv_header() << "\n";
  for (const auto& r : reports) std::cout << bgl::report_csv_row(r) << "\n";
  const auto s = bgl::summarize(reports);
  std::cout << fmt::format("# {} samples {} passed {} degenerate {} min_margin {:.6g} worst_seed {}\n", kind,
                           s.samples, s.passed, s.degenerate, s.min_margin, s.worst_seed);
  for (const auto& v : s.violations) std::cout << "# violation " << v << "\n";
  return s.violations.empty() ? bgl::kExitOk : bgl::kExitInvariant;
}

int cmd_diagnose(const std::string& path) {
  const bgl::Checkpoint c = bgl::read_checkpoint(path);
  const bgl::DiagnosticsConfig cfg;
  std::cout << bgl::csv_header_line(cfg) << bgl::csv_row_line(bgl::diagnose(c, cfg));
  return bgl::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boussinesq / axisymmetric Euler growth-mechanism runner"};
  app.require_subcommand(1);

  std::string config_path, out;
  bool svg = false;
  auto* sim = app.add_subcommand("simulate", "run a configured scenario");
  sim->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out, "output directory (default: out_dir from the config)");
  sim->add_flag("--svg", svg, "also write plot_<column>.svg");

  std::string scenario, gen_out;
  int n1 = 0, n2 = 0;
  std::uint64_t gen_seed = 0;
  double perturbation = 0.0;
  auto* gen = app.add_subcommand("gen-data", "write the initial state of a scenario as a checkpoint");
  gen->add_option("--scenario", scenario, "scenario name")
      ->required()
      ->check(CLI::IsMember(bgl::scenario_names()));
  gen->add_option("--out", gen_out, "checkpoint path")->required();
  gen->add_option("--n1", n1, "first grid size (default per scenario)");
  gen->add_option("--n2", n2, "second grid size (default per scenario)");
  gen->add_option("--seed", gen_seed, "perturbation seed");
  gen->add_option("--perturbation", perturbation, "perturbation amplitude")->check(CLI::NonNegativeNumber);

  std::string kind;
  int samples = 100, resolution = 0, threads = 0;
  std::uint64_t seed = 1;
  auto* ver = app.add_subcommand("verify", "randomized inequality suites");
  ver->add_option("kind", kind, "omega-lp | smallinx1-a | smallinx1-b")
      ->required()
      ->check(CLI::IsMember({"omega-lp", "smallinx1-a", "smallinx1-b"}));
  ver->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
  ver->add_option("--seed", seed, "seed of sample 0");
  ver->add_option("--resolution", resolution, "grid size for the density suites")->check(CLI::PositiveNumber);
  ver->add_option("--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  std::string ckpt;
  auto* dia = app.add_subcommand("diagnose", "recompute a diagnostics row from a checkpoint");
  dia->add_option("--checkpoint", ckpt, "checkpoint path")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : bgl::kExitError;
  }

  try {
    if (*sim) return cmd_simulate(config_path, out, svg);
    if (*gen) return cmd_gen_data(scenario, gen_out, n1, n2, gen_seed, perturbation);
    if (*ver) return cmd_verify(kind, samples, seed, resolution, threads);
    if (*dia) return cmd_diagnose(ckpt);
  } catch (const bgl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bgl::kExitError;
  }
  return bgl::kExitError;
}
