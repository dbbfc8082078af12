#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bgl/field.hpp"

namespace bgl {

enum class Model { torus_viscous, torus_inviscid, strip_inviscid, axisym_euler };

std::string model_tag(Model m);
Model model_from_tag(std::string_view tag);

/// Boussinesq in vorticity form on 𝕋². u is cached from ω.
struct TorusState {
  double t = 0.0;
  ScalarField rho;
  ScalarField omega;
  VelocityField u;
};

/// Boussinesq on 𝕋 × [0, π]; ψ vanishes on both walls.
struct StripState {
  double t = 0.0;
  ScalarField rho;
  ScalarField omega;
  ScalarField psi;
  VelocityField u;
};

/// Axisymmetric Euler with swirl; u holds (u^r, u^z).
struct AxisymState {
  double t = 0.0;
  ScalarField utheta;
  ScalarField omegatheta;
  ScalarField psi;
  VelocityField u;
};

using SimState = std::variant<TorusState, StripState, AxisymState>;

double state_time(const SimState& s);
const Grid& state_grid(const SimState& s);

/// Material points on the segment {0} × (0, π), stored by x2.
struct TracerSet {
  std::vector<double> x2;
  std::vector<std::string> labels;
  bool degenerate = false;
};

}  // namespace bgl
