#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bgl/operators.hpp"
#include "bgl/state.hpp"

namespace bgl {

struct DiagnosticsConfig {
  std::vector<double> s_list{1.0, 2.0};
  std::vector<double> p_list{1.0, 2.0, 4.0, kInf};
  bool operator==(const DiagnosticsConfig&) const = default;
};

/// One output sample. Columns that do not apply to a model stay empty.
struct DiagnosticsRow {
  double t = 0.0;
  std::optional<double> E_P, E_K, diss_acc, delta, A_press, B_visc, vort_int, boundary_flux;
  std::vector<std::optional<double>> Hs;        // per s_list entry
  std::vector<std::optional<double>> Lp_omega;  // per p_list entry, over Q
  std::optional<double> u_inf, grad_rho_inf, F_acc, h;
  std::vector<std::optional<double>> Ms;  // per s_list entry
  std::optional<double> eta;

  // not written to the CSV
  std::optional<double> ep_prime;       ///< ∫ρu2
  std::optional<double> grad_u_sq;      ///< ‖∇u‖²_{L²}
  std::optional<double> grad_u_sq_acc;  ///< ∫0^t ‖∇u‖²
  std::optional<double> inv_grad_acc;   ///< ∫0^t ‖∇ρ‖∞⁻¹
  /// min ρ on {0}×[0,π] and max ρ on {π}×[0,π]; on the annulus min u^θ on
  /// z = π and max |u^θ| on z = 0.
  std::optional<double> line_a_min, line_b_max;
  std::optional<double> gamma_max;  ///< max |r u^θ| (annulus)
};

/// CSV header names in the frozen order.
std::vector<std::string> csv_columns(const DiagnosticsConfig& cfg);
/// Row values in csv_columns order.
std::vector<std::optional<double>> csv_values(const DiagnosticsRow& row);

// ---- energies -------------------------------------------------------------

/// ∫ f·x2 (x2 = z on the annulus). Periodic axes use the exact moment of the
/// trigonometric interpolant, bounded axes the trapezoid rule.
double potential_energy(const ScalarField& rho);
/// ½∫|u|² on planar grids.
double kinetic_energy(const VelocityField& u);
/// Planar ½∫|u|², or ½∫ r(u^r² + u^z² + u^θ²) dr dz on the annulus.
double kinetic_energy(const SimState& s);

/// ∫ρu2 (torus and strip).
double ep_prime(const SimState& s);

struct EpSecond {
  double A_press = 0.0;
  double B_visc = 0.0;
  double delta = 0.0;
};

/// A = Σ∫((-Δ)⁻¹∂2ρ)∂_iu_j∂_ju_i, B = ν∫ρΔu2, δ = ‖∂1ρ‖²_{Ḣ⁻¹}. Torus only.
EpSecond ep_second_decomposition(const TorusState& s, double nu);

/// ‖∇u‖²_{L²} = ‖ω‖²_{L²} on the torus.
double grad_u_squared(const TorusState& s);

/// max over outputs of |E_P + E_K + diss - E_P(0) - E_K(0)| / (E_P(0) + E_K(0) + ε).
double energy_budget_residual(const std::vector<DiagnosticsRow>& series, double nu);

// ---- quarter-domain quantities -------------------------------------------

/// Quadrature weights of Q = [0,π]² (torus, strip) or [π,2π]×[0,π]
/// (annulus), trapezoid on Q's edges, zero outside Q.
std::vector<double> q_weights(const Grid& g);

/// ∫_Q ω (ω^θ on the annulus, measure dr dz).
double vorticity_integral(const SimState& s);
double q_integral(const ScalarField& f);
/// (∫_Q |f|^p)^{1/p}; p = kInf gives max over Q.
double q_lp_norm(const ScalarField& f, double p);

/// ∫0^π ρ(0,x2) dx2 - ∫0^π ρ(π,x2) dx2 on the torus and strip; on the annulus
/// the swirl production ∫_π^{2π} (1/r)(u^θ(r,π)² - u^θ(r,0)²) dr.
double boundary_flux(const SimState& s);

/// Values on the segment {x1 = 0} × [0, π] (torus/strip) or {z = π} / {z = 0}
/// (annulus) in increasing x2 (or r).
std::vector<double> segment_values(const ScalarField& f, double x1_or_z);

/// ‖u‖∞ of the planar / meridional velocity.
double velocity_sup(const SimState& s);

// ---- series ---------------------------------------------------------------

/// Builds the output series of a run. Call observe() at t = 0 and after
/// every step; call emit() at output times (after the observe() of the same
/// state). Accumulators use the trapezoid rule per step.
class SeriesBuilder {
 public:
  SeriesBuilder(double nu, DiagnosticsConfig cfg);

  void observe(const SimState& s);
  const DiagnosticsRow& emit(const SimState& s, const TracerSet* tracers);
  const std::vector<DiagnosticsRow>& rows() const { return rows_; }

 private:
  double nu_;
  DiagnosticsConfig cfg_;
  std::vector<DiagnosticsRow> rows_;
  bool started_ = false;
  double last_t_ = 0.0, last_gu_ = 0.0, last_gr_ = 0.0;
  double g_acc_ = 0.0, f_acc_ = 0.0, i_acc_ = 0.0;
  bool has_gu_ = false, has_gr_ = false;
};

/// Instantaneous columns only (accumulators and window quantities empty).
DiagnosticsRow instantaneous_row(const SimState& s, double nu, const DiagnosticsConfig& cfg,
                                 const TracerSet* tracers = nullptr);

}  // namespace bgl
