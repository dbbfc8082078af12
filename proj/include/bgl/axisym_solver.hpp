#pragma once

#include "bgl/state.hpp"

namespace bgl {

/// Per z-wavenumber radial solve of
///   -[(ψ_{i+1}-ψ_i)/r_{i+½} - (ψ_i-ψ_{i-1})/r_{i-½}]/h² + (k²/r_i)ψ_i = ω̂^θ_i
/// with ψ = 0 at r = π and r = 2π. Wall rows of ω^θ are ignored.
ScalarField poisson_annulus(const ScalarField& omegatheta);

/// The discrete operator above applied on interior rows; wall rows copy ψ.
ScalarField annulus_poisson_apply(const ScalarField& psi);

/// Builds a state with ψ and (u^r, u^z) = (-(1/r)∂zψ, (1/r)D_rψ).
AxisymState make_axisym_state(double t, ScalarField utheta, ScalarField omegatheta);

/// Tendencies of Γ = r u^θ and ζ = ω^θ / r.
struct AxisymTendencies {
  ScalarField dgamma;
  ScalarField dzeta;
};

/// spectral: Γ advected with spectral z and fourth-order r derivatives.
/// weno5: Γ by upwinded WENO5 in advective form, no output truncation.
/// ζ is spectral in both cases.
enum class AxisymAdvection { spectral, weno5 };

struct AxisymStepOptions {
  double cfl = 0.5;
  bool project = true;  ///< Γ even, ζ odd in z after every stage
  bool dealias = true;  ///< 2/3 rule along z on products
  AxisymAdvection advection = AxisymAdvection::spectral;
};

/// dΓ/dt = -u·∇Γ, dζ/dt = -u·∇ζ + ∂z(Γ²)/r⁴.
AxisymTendencies rhs_axisym(const AxisymState& s, const AxisymStepOptions& opt = {});

double axisym_dt_limit(const AxisymState& s, double cfl = 0.5);

/// Classical RK4 step on (Γ, ζ).
AxisymState step_axisym(const AxisymState& s, double dt, const AxisymStepOptions& opt = {});

}  // namespace bgl
