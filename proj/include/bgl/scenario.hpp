#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bgl/state.hpp"

namespace bgl {

/// Initial-data family. `amplitude` is the density scale (viscous-t2,
/// inviscid-t2, strip-invB) or k0 (axisym-3d); `alpha` scales the initial
/// vorticity; `modulation` is the cos x1 cos 2x2 factor of viscous-t2;
/// `perturbation` scales a random band-limited (|k| <= 8) in-class
/// perturbation drawn from `seed`.
struct ScenarioSpec {
  std::string name = "inviscid-t2";
  double amplitude = 1.0;
  double alpha = 0.0;
  double modulation = 0.25;
  double perturbation = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const ScenarioSpec&) const = default;
};

const std::vector<std::string>& scenario_names();

/// Model the scenario runs under (viscous-t2 -> torus-viscous, ...).
Model scenario_model(const std::string& name);

/// Default grid (n1, n2) per scenario.
std::pair<int, int> scenario_default_grid(const std::string& name);

Grid scenario_grid(const std::string& name, int n1, int n2);

struct Scenario {
  SimState state;
  std::optional<TracerSet> tracers;
  double k0 = 0.0;
  double a = 0.0;  ///< inviscid-t2: argmax of ρ0(0, ·) on (0, π)
  double b = 0.0;  ///< inviscid-t2: ρ0(0, b) = k0/2, ρ0 >= k0/2 on [b, a]
};

/// Throws ConfigError naming the violated clause when the parameters cannot
/// produce admissible data.
Scenario make_scenario(const ScenarioSpec& spec, const Grid& grid);

struct Clause {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AssumptionReport {
  std::vector<Clause> clauses;
  bool ok() const;
  const Clause* find(const std::string& name) const;
};

/// Checks the hypothesis class of the named scenario: parities (1e-12),
/// sign and floor conditions on the relevant grid lines, a spectral-tail
/// smoothness proxy, and nonzero-ness.
AssumptionReport validate_assumptions(const SimState& state, const ScenarioSpec& spec);

/// k0 measured from the initial state per the scenario's definition.
double measure_k0(const SimState& state, const std::string& scenario);

}  // namespace bgl
