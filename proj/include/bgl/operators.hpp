#pragma once

#include <limits>
#include <vector>

#include "bgl/field.hpp"

namespace bgl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ∂f along an axis: spectral (ik, Nyquist dropped) on periodic axes,
/// fourth-order centred differences with one-sided closures on bounded axes.
ScalarField derivative(const ScalarField& f, Axis axis);

/// Spectral Laplacian on the torus.
ScalarField laplacian_torus(const ScalarField& f);

/// Mean-zero g with -Δg = f - mean(f).
ScalarField inverse_laplacian_torus(const ScalarField& f);

/// u = (∂2ψ, -∂1ψ) with -Δψ = ω - mean(ω), so that ∂1u2 - ∂2u1 = ω - mean(ω).
VelocityField biot_savart_torus(const ScalarField& omega);

/// ∂1u2 - ∂2u1 on the torus or strip.
ScalarField curl(const VelocityField& u);

/// ∂1u1 + ∂2u2 on the torus or strip; (1/r)∂r(r u^r) + ∂z u^z on the annulus.
ScalarField divergence(const VelocityField& u);

/// Homogeneous Sobolev norm ‖f‖_{Ḣ^s(𝕋²)}, zero mode excluded, scaled so that
/// s = 0 equals the L² norm of f - mean(f). Requires s in [-2, 6].
double sobolev_norm(const ScalarField& f, double s);

/// δ = ‖∂1ρ‖²_{Ḣ⁻¹} = Σ_{k≠0} (k1²/|k|²)|ρ̂_k|² (2π)².
double delta_functional(const ScalarField& rho);

/// (∫|f|^p)^{1/p} with the grid quadrature; p = kInf gives the sample max.
double lp_norm(const ScalarField& f, double p);

/// Sample maximum of |∇f|.
double grad_sup(const ScalarField& f);

/// Cell weights: equal on periodic axes, trapezoid on bounded axes. The
/// annulus measure is dr dz (no radial factor).
std::vector<double> quadrature_weights(const Grid& g);

double integrate(const ScalarField& f);

/// Spectral counterpart of ∫f² (Parseval), using the same measure as
/// quadrature_weights.
double spectral_l2_squared(const SpectralField& s);

namespace detail {

/// Fourth-order derivative along the storage rows (bounded axis) of a
/// rows × cols array with spacing h.
void fd4_rows(const double* in, double* out, int rows, int cols, double h);

/// Spectral derivative along the storage columns (periodic axis), optionally
/// truncating |k| > kmax first (kmax < 0 keeps every mode).
void spectral_cols_derivative(const double* in, double* out, int rows, int cols,
                              int kmax = -1);

/// Thomas elimination for a tridiagonal system with real coefficients and a
/// complex right-hand side, solved in place. lower[0] and upper[n-1] unused.
void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::complex<double>* rhs, int n);

/// Zeroes column wavenumbers above kmax in every row of a rows × cols array.
void truncate_cols(std::vector<double>& v, int rows, int cols, int kmax);

/// Adds vel · ∂f to out using fifth-order WENO upwinding (Jiang-Peng).
/// along_cols selects the storage-column axis (periodic) instead of the row
/// axis; a bounded row axis is closed by even reflection about the end rows.
void weno5_advect(const double* f, const double* vel, double* out, int rows, int cols,
                  double h, bool along_cols, bool periodic);

/// Trapezoid weights for n points with spacing h.
std::vector<double> trapezoid(int n, double h);

}  // namespace detail

}  // namespace bgl
