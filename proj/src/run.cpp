#include "bgl/run.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "bgl/axisym_solver.hpp"
#include "bgl/error.hpp"
#include "bgl/strip_solver.hpp"
#include "bgl/svg.hpp"
#include "bgl/torus_solver.hpp"

namespace bgl {
namespace {

struct Event {
  double t = 0.0;
  bool output = false;
  bool checkpoint = false;
};

std::vector<Event> schedule(const RunConfig& cfg) {
  std::vector<Event> ev;
  const double H = cfg.horizon;
  const double eps = 1e-12 * std::max(1.0, H);
  for (long k = 1;; ++k) {
    const double t = k * cfg.output_interval;
    if (t >= H - eps) break;
    ev.push_back({t, true, false});
  }
  if (H > 0.0) ev.push_back({H, true, false});
  for (double c : cfg.checkpoint_times) {
    if (c <= 0.0) continue;
    auto it = std::find_if(ev.begin(), ev.end(), [&](const Event& e) { return std::abs(e.t - c) <= eps; });
    if (it != ev.end()) it->checkpoint = true;
    else ev.push_back({c, false, true});
  }
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
  return ev;
}

double dt_limit(const SimState& s, double cfl) {
  if (const auto* t = std::get_if<TorusState>(&s)) return torus_dt_limit(*t, cfl);
  if (const auto* t = std::get_if<StripState>(&s)) return strip_dt_limit(*t, cfl);
  return axisym_dt_limit(std::get<AxisymState>(s), cfl);
}

SimState advance(const SimState& s, double dt, const RunConfig& cfg, TracerSet* tracers) {
  if (const auto* t = std::get_if<TorusState>(&s)) {
    TorusStepOptions o;
    o.cfl = cfg.cfl;
    if (scenario_model(cfg.scenario.name) == Model::torus_inviscid) o.advection = TorusAdvection::weno5;
    return step(*t, dt, cfg.nu, tracers, o);
  }
  if (const auto* t = std::get_if<StripState>(&s)) {
    StripStepOptions o;
    o.cfl = cfg.cfl;
    return step_strip(*t, dt, o);
  }
  AxisymStepOptions o;
  o.cfl = cfg.cfl;
  return step_axisym(std::get<AxisymState>(s), dt, o);
}

std::string time_tag(double t) { return fmt::format("{:.6f}", t); }

}  // namespace

int RunResult::exit_status() const {
  if (blowup_time) return kExitBlowup;
  if (!assumptions.ok() || !monitors.pass()) return kExitInvariant;
  return kExitOk;
}

RunResult run_simulation(const RunConfig& cfg, const RunHooks& hooks) {
  validate_config(cfg);
  const Grid grid = scenario_grid(cfg.scenario.name, cfg.n1, cfg.n2);
  Scenario sc = make_scenario(cfg.scenario, grid);
  RunResult res;
  res.assumptions = validate_assumptions(sc.state, cfg.scenario);
  res.context = monitor_context(sc.state, cfg.scenario.name, sc.k0, cfg.nu);
  const Model model = scenario_model(cfg.scenario.name);

  SeriesBuilder sb(cfg.nu, cfg.diagnostics);
  SimState state = sc.state;
  std::optional<TracerSet> tracers = sc.tracers;
  TracerSet* tp = tracers ? &*tracers : nullptr;

  auto output = [&]() {
    const auto& row = sb.emit(state, tp);
    if (hooks.on_output) hooks.on_output(state, row);
  };
  auto checkpoint = [&]() { res.checkpoints.push_back({model, cfg.nu, state, tracers}); };

  sb.observe(state);
  output();
  if (std::find(cfg.checkpoint_times.begin(), cfg.checkpoint_times.end(), 0.0) != cfg.checkpoint_times.end()) {
    checkpoint();
  }
  try {
    for (const Event& ev : schedule(cfg)) {
      while (state_time(state) < ev.t) {
        const double remaining = ev.t - state_time(state);
        const double lim = std::min(cfg.dt_max, dt_limit(state, cfg.cfl));
        const double n = std::max(1.0, std::ceil(remaining / lim * (1.0 - 1e-12)));
        state = advance(state, remaining / n, cfg, tp);
        // land exactly on the event time, not one rounding away from it
        if (n == 1.0) std::visit([&](auto& x) { x.t = ev.t; }, state);
        ++res.steps;
        sb.observe(state);
        if (hooks.on_step) hooks.on_step(state);
      }
      if (ev.output) output();
      if (ev.checkpoint) checkpoint();
    }
  } catch (const BlowupError& e) {
    res.blowup_time = e.time();
    res.blowup_what = e.what();
  } catch (const InputError& e) {
    // non-finite samples rejected while building a stage
    res.blowup_time = state_time(state);
    res.blowup_what = e.what();
  }
  res.series = sb.rows();
  res.final_state = state;
  res.monitors = growth_monitors(res.series, res.context, cfg.diagnostics);
  return res;
}

std::string summary_report(const RunConfig& cfg, const RunResult& r) {
  std::string s = "# config\n" + serialize_config(cfg);
  s += "\n# hypotheses\n";
  for (const auto& c : r.assumptions.clauses) {
    s += fmt::format("{:<6} {}{}\n", c.pass ? "PASS" : "FAIL", c.name, c.detail.empty() ? "" : " (" + c.detail + ")");
  }
  s += fmt::format("\n# run\nsteps {}\nfinal_t {}\nk0 {}\nA0 {}\nE0 {}\n", r.steps,
                   r.final_state ? state_time(*r.final_state) : 0.0, r.context.k0, r.context.A0, r.context.E0);
  if (r.blowup_time) s += fmt::format("blowup at t={} ({})\n", *r.blowup_time, r.blowup_what);
  s += "\n# bounds\n" + format_monitor_report(r.monitors);
  const int st = r.exit_status();
  s += fmt::format("\nstatus {} {}\n", st,
                   st == kExitOk ? "ok" : st == kExitInvariant ? "invariant violation" : "blowup");
  return s;
}

int simulate(const RunConfig& cfg, const std::string& out_dir, bool svg, std::ostream& log) {
  try {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const RunResult r = run_simulation(cfg);
    const fs::path dir(out_dir);
    write_file((dir / "series.csv").string(), series_csv(r.series, cfg.diagnostics));
    for (const auto& c : r.checkpoints) {
      write_checkpoint((dir / ("checkpoint_" + time_tag(state_time(c.state)) + ".bgl")).string(), c);
    }
    const std::string summary = summary_report(cfg, r);
    write_file((dir / "summary.txt").string(), summary);
    if (svg) {
      const auto cols = csv_columns(cfg.diagnostics);
      std::vector<double> t;
      for (const auto& row : r.series) t.push_back(row.t);
      for (std::size_t j = 1; j < cols.size(); ++j) {
        PlotSeries ps{cols[j], t, {}};
        bool any = false;
        for (const auto& row : r.series) {
          const auto v = csv_values(row)[j];
          any = any || v.has_value();
          ps.y.push_back(v.value_or(std::nan("")));
        }
        if (!any) continue;
        std::string name = cols[j];
        std::replace(name.begin(), name.end(), ':', '_');
        write_file((dir / ("plot_" + name + ".svg")).string(), svg_line_plot(cols[j], "t", {ps}));
      }
    }
    log << summary;
    return r.exit_status();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

DiagnosticsRow diagnose(const Checkpoint& c, const DiagnosticsConfig& cfg) {
  const TracerSet* tp = c.tracers ? &*c.tracers : nullptr;
  return instantaneous_row(c.state, c.nu, cfg, tp);
}

}  // namespace bgl
