#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bgl/diagnostics.hpp"
#include "bgl/scenario.hpp"

namespace bgl {

/// Everything a run needs. Text form, one key per line:
///
///   [run]          model, nu, cfl, dt_max, horizon, output_interval, out_dir, seed
///   [grid]         n1, n2
///   [scenario]     name, amplitude, alpha, modulation, perturbation
///   [diagnostics]  s_list, p_list          (comma separated; "inf" allowed in p_list)
///   [checkpoints]  times                   (comma separated, may be empty)
///
/// Defaults: scenario inviscid-t2 with its model, grid and ν (0.01 for
/// viscous-t2, 0 otherwise); cfl 0.5, dt_max 0.05, horizon 5,
/// output_interval 0.05, out_dir "out", seed 0, s_list 1,2, p_list 1,2,4,inf,
/// no checkpoints. Keys before the first header belong to [run].
struct RunConfig {
  std::string model = "torus-inviscid";
  double nu = 0.0;
  double cfl = 0.5;
  double dt_max = 0.05;
  double horizon = 5.0;
  double output_interval = 0.05;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int n1 = 256, n2 = 256;
  ScenarioSpec scenario;
  DiagnosticsConfig diagnostics;
  std::vector<double> checkpoint_times;

  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError: "line N: ..." for syntax and unknown keys, the key
/// name and constraint for invalid values.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

/// Throws ConfigError naming the key and constraint.
void validate_config(const RunConfig& c);

}  // namespace bgl
