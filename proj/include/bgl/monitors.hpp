#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bgl/diagnostics.hpp"
#include "bgl/scenario.hpp"

namespace bgl {

inline constexpr double kBoundSlack = 0.01;
/// Universal constant of the L^p lower bound for ω on Q.
inline constexpr double kC0 = 1.0 / (128.0 * kPi * kPi);

/// Scenario constants the bounds are written in.
struct MonitorContext {
  std::string scenario;
  double nu = 0.0;
  double k0 = 0.0;
  double A0 = 0.0;          ///< ∫_Q ω0
  double E0 = 0.0;          ///< bound on ∫_Q |u|² (planar) or ∫_Q u_r²+u_z² (annulus)
  double omega0_l1 = 0.0;   ///< ‖ω0‖_{L¹} over the whole domain
  double omega0_inf = 0.0;  ///< ‖ω0‖∞
  double energy0 = 0.0;     ///< E_P(0) + E_K(0)
  double gamma0 = 0.0;      ///< max |r u^θ0|

  /// Waiting time after which the linear lower bound on A applies.
  double waiting_time() const;
};

MonitorContext monitor_context(const SimState& initial, const std::string& scenario, double k0,
                               double nu);

struct MonitorSample {
  double t = 0.0;
  double value = 0.0;
};

/// One bound as a trajectory. Lower-type lines need value >= threshold,
/// upper-type lines value <= threshold. Unasserted lines are reported only.
struct BoundMonitor {
  std::string name;
  bool upper = false;
  bool asserted = true;
  double threshold = 1.0 - kBoundSlack;
  std::vector<MonitorSample> samples;

  /// Worst sample (min for lower-type, max for upper-type); NaN when empty.
  MonitorSample worst() const;
  bool pass() const;
};

struct MonitorReport {
  double T0 = 0.0;
  std::vector<BoundMonitor> bounds;

  bool pass() const;
  const BoundMonitor* find(std::string_view name) const;
};

/// Growth-bound ratio trajectories for the scenario's model. An empty or
/// t = 0 only series gives an empty report. Throws InputError when a column
/// a bound needs is missing.
MonitorReport growth_monitors(const std::vector<DiagnosticsRow>& series, const MonitorContext& ctx,
                              const DiagnosticsConfig& cfg);

/// One line per bound: name, min (or max) value, its time, verdict.
std::string format_monitor_report(const MonitorReport& r);

}  // namespace bgl
