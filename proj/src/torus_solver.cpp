#include "bgl/torus_solver.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bgl/error.hpp"
#include "bgl/fft.hpp"
#include "bgl/operators.hpp"
#include "bgl/symmetry.hpp"

namespace bgl {
namespace {

using cplx = std::complex<double>;
using Spec = std::vector<cplx>;

// Spectral layout helper for one torus grid.
struct Layout {
  int nx, ny, modes;
  std::size_t n;

  explicit Layout(const TorusGrid& g)
      : nx(g.nx), ny(g.ny), modes(g.nx / 2 + 1), n(static_cast<std::size_t>(g.ny) * modes) {}

  int k2(int row) const { return wavenumber(row, ny); }
  // derivative multipliers with the Nyquist mode dropped
  double d1(int k1) const { return 2 * k1 == nx ? 0.0 : k1; }
  double d2(int row) const {
    const int k = k2(row);
    return 2 * std::abs(k) == ny ? 0.0 : k;
  }
  bool keep(int row, int k1) const { return k1 <= nx / 3 && std::abs(k2(row)) <= ny / 3; }
};

Spec to_spec(const Layout& L, const ScalarField& f) {
  Spec s(L.n);
  fft::forward_2d(L.ny, L.nx, f.values().data(), s.data());
  return s;
}

std::vector<double> to_phys(const Layout& L, const Spec& s) {
  std::vector<double> v(static_cast<std::size_t>(L.nx) * L.ny);
  fft::inverse_2d(L.ny, L.nx, s.data(), v.data());
  return v;
}

struct Nonlinear {
  Spec drho;
  Spec domega;
  std::vector<double> axis_u2;  // u2 on the column x1 = 0
};

// Advective and buoyancy tendencies (no viscosity) of a spectral state.
Nonlinear nonlinear(const Layout& L, const Spec& rho, const Spec& omega, double t, bool weno) {
  Spec u1(L.n), u2(L.n), r1(L.n), r2(L.n), w1(L.n), w2(L.n);
  for (int row = 0; row < L.ny; ++row) {
    const int k2 = L.k2(row);
    const double d2 = L.d2(row);
    for (int k1 = 0; k1 < L.modes; ++k1) {
      const std::size_t i = static_cast<std::size_t>(row) * L.modes + k1;
      if (!L.keep(row, k1)) continue;
      const double d1 = L.d1(k1);
      const int kk = k1 * k1 + k2 * k2;
      const cplx psi = kk == 0 ? cplx(0.0) : omega[i] / static_cast<double>(kk);
      u1[i] = cplx(0.0, d2) * psi;
      u2[i] = cplx(0.0, -d1) * psi;
      r1[i] = cplx(0.0, d1) * rho[i];
      r2[i] = cplx(0.0, d2) * rho[i];
      w1[i] = cplx(0.0, d1) * omega[i];
      w2[i] = cplx(0.0, d2) * omega[i];
    }
  }
  const auto pu1 = to_phys(L, u1), pu2 = to_phys(L, u2);
  const auto pr1 = to_phys(L, r1), pr2 = to_phys(L, r2);
  const auto pw1 = to_phys(L, w1), pw2 = to_phys(L, w2);
  std::vector<double> a(pu1.size()), b(pu1.size());
  if (weno) {
    const auto pr = to_phys(L, rho);
    detail::weno5_advect(pr.data(), pu1.data(), a.data(), L.ny, L.nx, 2.0 * kPi / L.nx, true, true);
    detail::weno5_advect(pr.data(), pu2.data(), a.data(), L.ny, L.nx, 2.0 * kPi / L.ny, false, true);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = weno ? -a[i] : -(pu1[i] * pr1[i] + pu2[i] * pr2[i]);
    b[i] = -(pu1[i] * pw1[i] + pu2[i] * pw2[i]);
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw BlowupError(t, fmt::format("non-finite tendency at t = {}", t));
    }
  }
  Nonlinear out{Spec(L.n), Spec(L.n), std::vector<double>(L.ny)};
  fft::forward_2d(L.ny, L.nx, a.data(), out.drho.data());
  fft::forward_2d(L.ny, L.nx, b.data(), out.domega.data());
  for (int row = 0; row < L.ny; ++row) {
    for (int k1 = 0; k1 < L.modes; ++k1) {
      const std::size_t i = static_cast<std::size_t>(row) * L.modes + k1;
      if (!L.keep(row, k1)) {
        if (!weno) out.drho[i] = 0.0;
        out.domega[i] = 0.0;
      }
      out.domega[i] -= cplx(0.0, L.d1(k1)) * rho[i];
    }
  }
  for (int row = 0; row < L.ny; ++row) {
    out.axis_u2[row] = pu2[static_cast<std::size_t>(row) * L.nx + L.nx / 2];
  }
  return out;
}

// Trigonometric interpolant of n equispaced samples on (-π, π] at x.
double trig_interp(const std::vector<double>& samples, double x) {
  const int n = static_cast<int>(samples.size());
  std::vector<cplx> c(n / 2 + 1);
  fft::forward_rows(1, n, samples.data(), c.data());
  const double y = x + kPi;  // samples sit at y_j = j·2π/n
  double v = c[0].real();
  for (int k = 1; k < n / 2; ++k) v += 2.0 * (c[k] * std::polar(1.0, k * y)).real();
  v += c[n / 2].real() * std::cos(0.5 * n * y);
  return v;
}

void check_tracers(TracerSet& tr) {
  for (double x : tr.x2) {
    if (x < 1e-6 || x > kPi - 1e-6) tr.degenerate = true;
  }
}

}  // namespace

TorusState make_torus_state(double t, ScalarField rho, ScalarField omega) {
  if (!std::holds_alternative<TorusGrid>(rho.grid()) || rho.grid() != omega.grid()) {
    throw InputError("torus state needs ρ and ω on one torus grid");
  }
  VelocityField u = biot_savart_torus(omega);
  return TorusState{t, std::move(rho), std::move(omega), std::move(u)};
}

TorusTendencies rhs_torus(const TorusState& s, double nu, const TorusStepOptions& opt) {
  if (nu < 0.0) throw InputError("nu must be >= 0");
  const Layout L(std::get<TorusGrid>(s.rho.grid()));
  const Spec rho = to_spec(L, s.rho);
  const Spec omega = to_spec(L, s.omega);
  Nonlinear n = nonlinear(L, rho, omega, s.t, opt.advection == TorusAdvection::weno5);
  for (int row = 0; row < L.ny; ++row) {
    const int k2 = L.k2(row);
    for (int k1 = 0; k1 < L.modes; ++k1) {
      const std::size_t i = static_cast<std::size_t>(row) * L.modes + k1;
      n.domega[i] -= nu * (k1 * k1 + k2 * k2) * omega[i];
    }
  }
  return {ScalarField(s.rho.grid(), to_phys(L, n.drho)),
          ScalarField(s.rho.grid(), to_phys(L, n.domega))};
}

double torus_dt_limit(const TorusState& s, double cfl) {
  const auto& g = std::get<TorusGrid>(s.rho.grid());
  double umax = 0.0;
  for (std::size_t i = 0; i < s.u.first.size(); ++i) {
    umax = std::max(umax, std::hypot(s.u.first.values()[i], s.u.second.values()[i]));
  }
  return cfl * std::min(g.dx(), g.dy()) / std::max(1.0, umax);
}

TorusState step(const TorusState& s, double dt, double nu, TracerSet* tracers,
                const TorusStepOptions& opt) {
  if (nu < 0.0) throw InputError("nu must be >= 0");
  const double limit = torus_dt_limit(s, opt.cfl);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw StepSizeError(fmt::format("dt = {} violates the CFL limit {}", dt, limit));
  }
  const Layout L(std::get<TorusGrid>(s.rho.grid()));
  const Spec r0 = to_spec(L, s.rho);
  const Spec w0 = to_spec(L, s.omega);

  std::vector<double> e_full(L.n), e_half(L.n);
  for (int row = 0; row < L.ny; ++row) {
    const int k2 = L.k2(row);
    for (int k1 = 0; k1 < L.modes; ++k1) {
      const std::size_t i = static_cast<std::size_t>(row) * L.modes + k1;
      const double lam = -nu * (k1 * k1 + k2 * k2);
      e_full[i] = std::exp(lam * dt);
      e_half[i] = std::exp(lam * 0.5 * dt);
    }
  }

  const double h = dt;
  const bool weno = opt.advection == TorusAdvection::weno5;
  Spec r(L.n), w(L.n);
  const Nonlinear k1 = nonlinear(L, r0, w0, s.t, weno);
  for (std::size_t i = 0; i < L.n; ++i) {
    r[i] = r0[i] + 0.5 * h * k1.drho[i];
    w[i] = e_half[i] * (w0[i] + 0.5 * h * k1.domega[i]);
  }
  const Nonlinear k2 = nonlinear(L, r, w, s.t + 0.5 * h, weno);
  for (std::size_t i = 0; i < L.n; ++i) {
    r[i] = r0[i] + 0.5 * h * k2.drho[i];
    w[i] = e_half[i] * w0[i] + 0.5 * h * k2.domega[i];
  }
  const Nonlinear k3 = nonlinear(L, r, w, s.t + 0.5 * h, weno);
  for (std::size_t i = 0; i < L.n; ++i) {
    r[i] = r0[i] + h * k3.drho[i];
    w[i] = e_full[i] * w0[i] + h * e_half[i] * k3.domega[i];
  }
  const Nonlinear k4 = nonlinear(L, r, w, s.t + h, weno);
  for (std::size_t i = 0; i < L.n; ++i) {
    r[i] = r0[i] + h / 6.0 * (k1.drho[i] + 2.0 * k2.drho[i] + 2.0 * k3.drho[i] + k4.drho[i]);
    w[i] = e_full[i] * w0[i] +
           h / 6.0 *
               (e_full[i] * k1.domega[i] + 2.0 * e_half[i] * (k2.domega[i] + k3.domega[i]) +
                k4.domega[i]);
  }

  if (tracers && !tracers->degenerate) {
    for (double& x : tracers->x2) {
      const double a = trig_interp(k1.axis_u2, x);
      const double b = trig_interp(k2.axis_u2, x + 0.5 * h * a);
      const double c = trig_interp(k3.axis_u2, x + 0.5 * h * b);
      const double d = trig_interp(k4.axis_u2, x + h * c);
      x += h / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    }
    check_tracers(*tracers);
  }

  const Grid& g = s.rho.grid();
  ScalarField rho(g, to_phys(L, r));
  ScalarField omega(g, to_phys(L, w));
  if (opt.project) {
    const SymmetryClass cls = torus_class();
    rho = symmetry_project(rho, cls.of("rho"));
    omega = symmetry_project(omega, cls.of("omega"));
  }
  return make_torus_state(s.t + dt, std::move(rho), std::move(omega));
}

double axis_velocity(const ScalarField& u2, double x2) {
  const auto& g = std::get<TorusGrid>(u2.grid());
  std::vector<double> col(g.ny);
  for (int row = 0; row < g.ny; ++row) col[row] = u2(row, g.nx / 2);
  return trig_interp(col, x2);
}

TracerSet advect_tracers(const TorusState& s, const TracerSet& tracers, double dt) {
  TracerSet out = tracers;
  if (out.degenerate) return out;
  const auto& g = std::get<TorusGrid>(s.rho.grid());
  std::vector<double> col(g.ny);
  for (int row = 0; row < g.ny; ++row) col[row] = s.u.second(row, g.nx / 2);
  for (double& x : out.x2) {
    const double a = trig_interp(col, x);
    const double b = trig_interp(col, x + 0.5 * dt * a);
    const double c = trig_interp(col, x + 0.5 * dt * b);
    const double d = trig_interp(col, x + dt * c);
    x += dt / 6.0 * (a + 2.0 * b + 2.0 * c + d);
  }
  check_tracers(out);
  return out;
}

double tracer_gap(const TracerSet& tracers) {
  if (tracers.x2.size() < 2) return 0.0;
  return std::abs(tracers.x2[1] - tracers.x2[0]);
}

}  // namespace bgl
