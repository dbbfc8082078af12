#pragma once

#include "bgl/state.hpp"

namespace bgl {

/// Solves (k² - D2²)ψ̂_k = ω̂_k for each x1-wavenumber with ψ = 0 on both walls
/// (three-point D2², Thomas elimination). Wall rows of ω are ignored.
ScalarField poisson_dirichlet_strip(const ScalarField& omega);

/// The discrete operator -∂1² - D2² applied on interior rows; wall rows copy ψ.
ScalarField strip_poisson_apply(const ScalarField& psi);

/// Builds a state with ψ from the Dirichlet solve and u = (D2ψ, -∂1ψ).
StripState make_strip_state(double t, ScalarField rho, ScalarField omega);

struct StripTendencies {
  ScalarField drho;
  ScalarField domega;
};

/// weno5: ρ by upwinded WENO5 in advective form, which keeps ρ on the symmetry
/// lines exactly (u1 = 0 there); ω by a conservative finite-volume form with
/// WENO5 face values in which ∫_Q ω changes only through the line values of ρ.
/// spectral: x1 derivatives by FFT, x2 by fourth-order differences.
enum class StripAdvection { weno5, spectral };

struct StripStepOptions {
  double cfl = 0.5;
  bool project = true;  ///< ρ even, ω odd in x1 after every stage
  bool dealias = true;  ///< 2/3 rule along x1 on products (spectral only)
  StripAdvection advection = StripAdvection::weno5;
};

/// dρ/dt = -u·∇ρ, dω/dt = -u·∇ω - ∂1ρ.
StripTendencies rhs_strip(const StripState& s, const StripStepOptions& opt = {});

double strip_dt_limit(const StripState& s, double cfl = 0.5);

/// Classical RK4 step.
StripState step_strip(const StripState& s, double dt, const StripStepOptions& opt = {});

}  // namespace bgl
