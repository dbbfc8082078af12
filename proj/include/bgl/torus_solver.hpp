#pragma once

#include "bgl/state.hpp"

namespace bgl {

/// Builds a state with u = biot_savart_torus(ω).
TorusState make_torus_state(double t, ScalarField rho, ScalarField omega);

struct TorusTendencies {
  ScalarField drho;
  ScalarField domega;
};

/// spectral: every product dealiased with the 2/3 rule on inputs and outputs.
/// weno5: ρ transported by upwinded WENO5 in advective form with the
/// dealiased velocity and no output truncation, so the sign of ρ on the
/// symmetry lines is not destroyed by Gibbs undershoot; ω stays spectral.
enum class TorusAdvection { spectral, weno5 };

struct TorusStepOptions {
  double cfl = 0.5;
  bool project = true;  ///< re-project onto the torus symmetry class
  TorusAdvection advection = TorusAdvection::spectral;
};

/// dρ/dt = -u·∇ρ, dω/dt = -u·∇ω - ∂1ρ + νΔω.
TorusTendencies rhs_torus(const TorusState& s, double nu, const TorusStepOptions& opt = {});

/// Largest admissible step: cfl·min(dx, dy)/max(1, ‖u‖∞).
double torus_dt_limit(const TorusState& s, double cfl = 0.5);

/// One integrating-factor RK4 step (exact e^{-ν|k|²dt} per mode on ω). When
/// `tracers` is given they are advanced with the stage velocities.
TorusState step(const TorusState& s, double dt, double nu, TracerSet* tracers = nullptr,
                const TorusStepOptions& opt = {});

/// RK4 for dx2/dt = u2(0, x2) in the frozen velocity of `s`.
TracerSet advect_tracers(const TorusState& s, const TracerSet& tracers, double dt);

/// u2(0, x2) by trigonometric interpolation of the grid column at x1 = 0.
double axis_velocity(const ScalarField& u2, double x2);

/// Tracer distance |x_b - x_a| (first two tracers).
double tracer_gap(const TracerSet& tracers);

}  // namespace bgl
