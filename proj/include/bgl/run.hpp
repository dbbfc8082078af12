#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bgl/config.hpp"
#include "bgl/io.hpp"
#include "bgl/monitors.hpp"

namespace bgl {

enum ExitStatus : int {
  kExitOk = 0,
  kExitInvariant = 1,  ///< an asserted bound or hypothesis failed
  kExitBlowup = 2,     ///< non-finite state before the horizon
  kExitError = 3,      ///< bad config, bad input, IO failure
};

struct RunHooks {
  /// After every output row (t = 0 included).
  std::function<void(const SimState&, const DiagnosticsRow&)> on_output;
  /// After every accepted step.
  std::function<void(const SimState&)> on_step;
};

struct RunResult {
  std::vector<DiagnosticsRow> series;
  AssumptionReport assumptions;
  MonitorContext context;
  MonitorReport monitors;
  std::vector<Checkpoint> checkpoints;
  std::optional<SimState> final_state;
  std::optional<double> blowup_time;
  std::string blowup_what;
  long steps = 0;

  int exit_status() const;
};

/// Runs the configured scenario to the horizon in memory. Output times are
/// the multiples of output_interval below the horizon and the horizon
/// itself; steps are shortened to land on output and checkpoint times.
RunResult run_simulation(const RunConfig& cfg, const RunHooks& hooks = {});

/// Plain-text summary: config, hypothesis clauses, monitor report, status.
std::string summary_report(const RunConfig& cfg, const RunResult& r);

/// run_simulation plus artifacts in `out_dir`: series.csv, summary.txt,
/// checkpoint_<t>.bgl per checkpoint time, and plot_<column>.svg with `svg`.
/// Returns the exit status; errors are reported on `log`.
int simulate(const RunConfig& cfg, const std::string& out_dir, bool svg, std::ostream& log);

/// Instantaneous diagnostics recomputed from a checkpoint.
DiagnosticsRow diagnose(const Checkpoint& c, const DiagnosticsConfig& cfg = {});

}  // namespace bgl
