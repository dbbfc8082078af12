#include "bgl/strip_solver.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <span>

#include "bgl/error.hpp"
#include "bgl/fft.hpp"
#include "bgl/operators.hpp"
#include "bgl/symmetry.hpp"

namespace bgl {
namespace {

using cplx = std::complex<double>;

const StripGrid& strip_of(const ScalarField& f) {
  if (const auto* g = std::get_if<StripGrid>(&f.grid())) return *g;
  throw DomainError(fmt::format("expected a strip field, got {}", grid_name(f.grid())));
}

std::vector<double> copy(const ScalarField& f) { return {f.values().begin(), f.values().end()}; }

// WENO5 reconstruction at the face between a and b from the stencil
// (m2, m1, a, b, p2) biased toward a.
inline double weno5_face(double m2, double m1, double a, double b, double p2) {
  constexpr double eps = 1e-6;
  const double q0 = (2.0 * m2 - 7.0 * m1 + 11.0 * a) / 6.0;
  const double q1 = (-m1 + 5.0 * a + 2.0 * b) / 6.0;
  const double q2 = (2.0 * a + 5.0 * b - p2) / 6.0;
  const double t0 = m2 - 2.0 * m1 + a, t1 = m1 - 2.0 * a + b, t2 = a - 2.0 * b + p2;
  const double u0 = m2 - 4.0 * m1 + 3.0 * a, u1 = m1 - b, u2 = 3.0 * a - 4.0 * b + p2;
  const double b0 = 13.0 / 12.0 * t0 * t0 + 0.25 * u0 * u0;
  const double b1 = 13.0 / 12.0 * t1 * t1 + 0.25 * u1 * u1;
  const double b2 = 13.0 / 12.0 * t2 * t2 + 0.25 * u2 * u2;
  const double a0 = 0.1 / ((eps + b0) * (eps + b0));
  const double a1 = 0.6 / ((eps + b1) * (eps + b1));
  const double a2 = 0.3 / ((eps + b2) * (eps + b2));
  return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

// Conservative vorticity tendency on the strip. Every node owns a cell
// (half cells on the walls); face volume fluxes are differences of ψ at cell
// corners, so each cell is exactly divergence free. Faces touching the
// symmetry columns carry no flux and see the line value of ρ in the buoyancy
// term, which makes the trapezoid integral of ω over [0,π]² change at exactly
// ∫ρ(0,x2) - ρ(π,x2) dx2.
std::vector<double> omega_tendency_fv(const StripGrid& g, std::span<const double> omega,
                                      std::span<const double> rho,
                                      std::span<const double> psi) {
  const int rows = g.nz, cols = g.nx, modes = cols / 2 + 1;
  const double h1 = g.dx(), h2 = g.dz();
  const std::size_t n = omega.size();
  auto at = [cols](int r, int c) { return static_cast<std::size_t>(r) * cols + c; };

  // ψ at x1 + h1/2 by a spectral shift, then at x2 + h2/2 by fourth-order
  // interpolation with odd reflection about the walls.
  std::vector<cplx> s(static_cast<std::size_t>(rows) * modes);
  fft::forward_rows(rows, cols, psi.data(), s.data());
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < modes; ++k) {
      cplx& c = s[static_cast<std::size_t>(r) * modes + k];
      c = 2 * k == cols ? cplx(0.0) : c * std::polar(1.0, 0.5 * k * h1);
    }
  }
  std::vector<double> ph(n);
  fft::inverse_rows(rows, cols, s.data(), ph.data());
  auto phr = [&](int r, int c) {
    if (r < 0) return -ph[at(-r, c)];
    if (r > rows - 1) return -ph[at(2 * (rows - 1) - r, c)];
    return ph[at(r, c)];
  };
  // corner(r, c): ψ at (x1[c] + h1/2, x2[r] + h2/2), r = 0..rows-2
  std::vector<double> corner(static_cast<std::size_t>(rows - 1) * cols);
  for (int r = 0; r < rows - 1; ++r) {
    for (int c = 0; c < cols; ++c) {
      corner[at(r, c)] =
          (-phr(r - 1, c) + 9.0 * phr(r, c) + 9.0 * phr(r + 1, c) - phr(r + 2, c)) / 16.0;
    }
  }
  auto top = [&](int r, int c) { return r == rows - 1 ? 0.0 : corner[at(r, c)]; };
  auto bottom = [&](int r, int c) { return r == 0 ? 0.0 : corner[at(r - 1, c)]; };

  const int line0 = cols / 2, linepi = 0;
  auto touches_line = [&](int c) {  // face between c and c+1
    const int d = (c + 1) % cols;
    return c == line0 || d == line0 || c == linepi || d == linepi;
  };
  auto w = [&](int r, int c) { return omega[at(r, ((c % cols) + cols) % cols)]; };
  auto wr = [&](int r, int c) {
    if (r < 0) r = -r;
    if (r > rows - 1) r = 2 * (rows - 1) - r;
    return omega[at(r, c)];
  };

  std::vector<double> out(n, 0.0);
  // x1 faces
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (touches_line(c)) continue;
      const double flux = top(r, c) - bottom(r, c);
      const double face = flux > 0.0
          ? weno5_face(w(r, c - 2), w(r, c - 1), w(r, c), w(r, c + 1), w(r, c + 2))
          : weno5_face(w(r, c + 3), w(r, c + 2), w(r, c + 1), w(r, c), w(r, c - 1));
      out[at(r, c)] -= flux * face;
      out[at(r, (c + 1) % cols)] += flux * face;
    }
  }
  // x2 faces between rows r and r+1
  for (int r = 0; r < rows - 1; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double flux = -(corner[at(r, c)] - corner[at(r, (c + cols - 1) % cols)]);
      const double face = flux > 0.0
          ? weno5_face(wr(r - 2, c), wr(r - 1, c), wr(r, c), wr(r + 1, c), wr(r + 2, c))
          : weno5_face(wr(r + 3, c), wr(r + 2, c), wr(r + 1, c), wr(r, c), wr(r - 1, c));
      out[at(r, c)] -= flux * face;
      out[at(r + 1, c)] += flux * face;
    }
  }
  for (int r = 0; r < rows; ++r) {
    const double area = h1 * h2 * ((r == 0 || r == rows - 1) ? 0.5 : 1.0);
    for (int c = 0; c < cols; ++c) out[at(r, c)] /= area;
  }
  // buoyancy -∂1ρ in flux form
  for (int r = 0; r < rows; ++r) {
    auto rh = [&](int c) { return rho[at(r, ((c % cols) + cols) % cols)]; };
    auto face = [&](int c) {
      if (c == line0 || c == linepi) return rh(c);
      if ((c + 1) % cols == line0 || (c + 1) % cols == linepi) return rh(c + 1);
      return (-rh(c - 1) + 9.0 * rh(c) + 9.0 * rh(c + 1) - rh(c + 2)) / 16.0;
    };
    for (int c = 0; c < cols; ++c) {
      if (c == line0 || c == linepi) continue;
      out[at(r, c)] -= (face(c) - face(c - 1 < 0 ? cols - 1 : c - 1)) / h1;
    }
  }
  return out;
}

}  // namespace

ScalarField poisson_dirichlet_strip(const ScalarField& omega) {
  const StripGrid& g = strip_of(omega);
  const int rows = g.nz, cols = g.nx, modes = cols / 2 + 1;
  const double h = g.dz(), ih2 = 1.0 / (h * h);
  std::vector<cplx> w(static_cast<std::size_t>(rows) * modes);
  fft::forward_rows(rows, cols, omega.values().data(), w.data());

  const int m = rows - 2;
  std::vector<double> lower(m, -ih2), diag(m), upper(m, -ih2);
  std::vector<cplx> rhs(m);
  std::vector<cplx> psi(w.size(), cplx(0.0));
  for (int k = 0; k < modes; ++k) {
    std::fill(diag.begin(), diag.end(), k * k + 2.0 * ih2);
    for (int j = 0; j < m; ++j) rhs[j] = w[static_cast<std::size_t>(j + 1) * modes + k];
    detail::solve_tridiagonal(lower, diag, upper, rhs.data(), m);
    for (int j = 0; j < m; ++j) psi[static_cast<std::size_t>(j + 1) * modes + k] = rhs[j];
  }
  std::vector<double> out(omega.size());
  fft::inverse_rows(rows, cols, psi.data(), out.data());
  for (int c = 0; c < cols; ++c) {
    out[c] = 0.0;
    out[static_cast<std::size_t>(rows - 1) * cols + c] = 0.0;
  }
  return ScalarField(omega.grid(), std::move(out));
}

ScalarField strip_poisson_apply(const ScalarField& psi) {
  const StripGrid& g = strip_of(psi);
  const int rows = g.nz, cols = g.nx;
  const double ih2 = 1.0 / (g.dz() * g.dz());
  const auto v = psi.values();
  // -∂1²ψ spectrally
  std::vector<double> d11(v.size());
  std::vector<cplx> s(static_cast<std::size_t>(rows) * (cols / 2 + 1));
  fft::forward_rows(rows, cols, v.data(), s.data());
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k <= cols / 2; ++k) s[static_cast<std::size_t>(r) * (cols / 2 + 1) + k] *= k * k;
  }
  fft::inverse_rows(rows, cols, s.data(), d11.data());
  std::vector<double> out(v.begin(), v.end());
  for (int r = 1; r < rows - 1; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      out[i] = d11[i] - (v[i - cols] - 2.0 * v[i] + v[i + cols]) * ih2;
    }
  }
  return ScalarField(psi.grid(), std::move(out));
}

StripState make_strip_state(double t, ScalarField rho, ScalarField omega) {
  const StripGrid& g = strip_of(rho);
  if (rho.grid() != omega.grid()) throw InputError("strip state needs ρ and ω on one grid");
  ScalarField psi = poisson_dirichlet_strip(omega);
  std::vector<double> u1(psi.size()), u2(psi.size());
  detail::fd4_rows(psi.values().data(), u1.data(), g.nz, g.nx, g.dz());
  detail::spectral_cols_derivative(psi.values().data(), u2.data(), g.nz, g.nx);
  for (double& x : u2) x = -x;
  for (int c = 0; c < g.nx; ++c) {
    u2[c] = 0.0;
    u2[static_cast<std::size_t>(g.nz - 1) * g.nx + c] = 0.0;
  }
  VelocityField u{ScalarField(rho.grid(), std::move(u1)), ScalarField(rho.grid(), std::move(u2))};
  return StripState{t, std::move(rho), std::move(omega), std::move(psi), std::move(u)};
}

StripTendencies rhs_strip(const StripState& s, const StripStepOptions& opt) {
  const StripGrid& g = strip_of(s.rho);
  const int rows = g.nz, cols = g.nx;
  if (opt.advection == StripAdvection::weno5) {
    const auto rho = s.rho.values();
    const auto u1 = s.u.first.values(), u2 = s.u.second.values();
    const std::size_t n = rho.size();
    std::vector<double> a(n, 0.0);
    detail::weno5_advect(rho.data(), u1.data(), a.data(), rows, cols, g.dx(), true, true);
    detail::weno5_advect(rho.data(), u2.data(), a.data(), rows, cols, g.dz(), false, false);
    std::vector<double> b = omega_tendency_fv(g, s.omega.values(), rho, s.psi.values());
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = -a[i];
      if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
        throw BlowupError(s.t, fmt::format("non-finite tendency at t = {}", s.t));
      }
    }
    return {ScalarField(s.rho.grid(), std::move(a)), ScalarField(s.rho.grid(), std::move(b))};
  }
  const int kmax = opt.dealias ? cols / 3 : -1;
  std::vector<double> rho = copy(s.rho), omega = copy(s.omega);
  std::vector<double> u1 = copy(s.u.first), u2 = copy(s.u.second);
  if (opt.dealias) {
    detail::truncate_cols(rho, rows, cols, kmax);
    detail::truncate_cols(omega, rows, cols, kmax);
    detail::truncate_cols(u1, rows, cols, kmax);
    detail::truncate_cols(u2, rows, cols, kmax);
  }
  const std::size_t n = rho.size();
  std::vector<double> r1(n), r2(n), w1(n), w2(n);
  detail::spectral_cols_derivative(rho.data(), r1.data(), rows, cols);
  detail::spectral_cols_derivative(omega.data(), w1.data(), rows, cols);
  detail::fd4_rows(rho.data(), r2.data(), rows, cols, g.dz());
  detail::fd4_rows(omega.data(), w2.data(), rows, cols, g.dz());
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = -(u1[i] * r1[i] + u2[i] * r2[i]);
    b[i] = -(u1[i] * w1[i] + u2[i] * w2[i]);
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw BlowupError(s.t, fmt::format("non-finite tendency at t = {}", s.t));
    }
  }
  if (opt.dealias) {
    detail::truncate_cols(a, rows, cols, kmax);
    detail::truncate_cols(b, rows, cols, kmax);
  }
  // buoyancy from the full ρ
  std::vector<double> rx(n);
  detail::spectral_cols_derivative(s.rho.values().data(), rx.data(), rows, cols);
  for (std::size_t i = 0; i < n; ++i) b[i] -= rx[i];
  return {ScalarField(s.rho.grid(), std::move(a)), ScalarField(s.rho.grid(), std::move(b))};
}

double strip_dt_limit(const StripState& s, double cfl) {
  const StripGrid& g = strip_of(s.rho);
  double umax = 0.0;
  for (std::size_t i = 0; i < s.u.first.size(); ++i) {
    umax = std::max(umax, std::hypot(s.u.first.values()[i], s.u.second.values()[i]));
  }
  return cfl * std::min(g.dx(), g.dz()) / std::max(1.0, umax);
}

StripState step_strip(const StripState& s, double dt, const StripStepOptions& opt) {
  const double limit = strip_dt_limit(s, opt.cfl);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw StepSizeError(fmt::format("dt = {} violates the CFL limit {}", dt, limit));
  }
  const SymmetryClass cls = strip_class();
  auto stage = [&](const ScalarField& rho, const ScalarField& omega, double t) {
    if (!opt.project) return make_strip_state(t, rho, omega);
    return make_strip_state(t, symmetry_project(rho, cls.of("rho")),
                            symmetry_project(omega, cls.of("omega")));
  };
  const StripTendencies k1 = rhs_strip(s, opt);
  const StripState s2 = stage(s.rho + 0.5 * dt * k1.drho, s.omega + 0.5 * dt * k1.domega,
                              s.t + 0.5 * dt);
  const StripTendencies k2 = rhs_strip(s2, opt);
  const StripState s3 = stage(s.rho + 0.5 * dt * k2.drho, s.omega + 0.5 * dt * k2.domega,
                              s.t + 0.5 * dt);
  const StripTendencies k3 = rhs_strip(s3, opt);
  const StripState s4 = stage(s.rho + dt * k3.drho, s.omega + dt * k3.domega, s.t + dt);
  const StripTendencies k4 = rhs_strip(s4, opt);
  const double c = dt / 6.0;
  return stage(s.rho + c * (k1.drho + 2.0 * k2.drho + 2.0 * k3.drho + k4.drho),
               s.omega + c * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega),
               s.t + dt);
}

}  // namespace bgl
