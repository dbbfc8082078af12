#include "bgl/axisym_solver.hpp"

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

const AnnulusGrid& annulus_of(const ScalarField& f) {
  if (const auto* g = std::get_if<AnnulusGrid>(&f.grid())) return *g;
  throw DomainError(fmt::format("expected an annulus field, got {}", grid_name(f.grid())));
}

std::vector<double> copy(const ScalarField& f) { return {f.values().begin(), f.values().end()}; }

// v(r, z) * r^power
std::vector<double> radial_scale(const AnnulusGrid& g, std::vector<double> v, int power) {
  for (int i = 0; i < g.nr; ++i) {
    const double f = std::pow(g.r(i), power);
    for (int c = 0; c < g.nz; ++c) v[static_cast<std::size_t>(i) * g.nz + c] *= f;
  }
  return v;
}

}  // namespace

ScalarField poisson_annulus(const ScalarField& omegatheta) {
  const AnnulusGrid& g = annulus_of(omegatheta);
  const int rows = g.nr, cols = g.nz, modes = cols / 2 + 1;
  const double h = g.dr(), ih2 = 1.0 / (h * h);
  std::vector<cplx> w(static_cast<std::size_t>(rows) * modes);
  fft::forward_rows(rows, cols, omegatheta.values().data(), w.data());

  const int m = rows - 2;
  std::vector<double> lower(m), diag0(m), upper(m), diag(m);
  std::vector<double> inv_r(m);
  for (int j = 0; j < m; ++j) {
    const int i = j + 1;
    const double rm = g.r(i) - 0.5 * h, rp = g.r(i) + 0.5 * h;
    lower[j] = -ih2 / rm;
    upper[j] = -ih2 / rp;
    diag0[j] = ih2 * (1.0 / rm + 1.0 / rp);
    inv_r[j] = 1.0 / g.r(i);
  }
  std::vector<cplx> rhs(m);
  std::vector<cplx> psi(w.size(), cplx(0.0));
  for (int k = 0; k < modes; ++k) {
    for (int j = 0; j < m; ++j) {
      diag[j] = diag0[j] + k * k * inv_r[j];
      rhs[j] = w[static_cast<std::size_t>(j + 1) * modes + k];
    }
    detail::solve_tridiagonal(lower, diag, upper, rhs.data(), m);
    for (int j = 0; j < m; ++j) psi[static_cast<std::size_t>(j + 1) * modes + k] = rhs[j];
  }
  std::vector<double> out(omegatheta.size());
  fft::inverse_rows(rows, cols, psi.data(), out.data());
  for (int c = 0; c < cols; ++c) {
    out[c] = 0.0;
    out[static_cast<std::size_t>(rows - 1) * cols + c] = 0.0;
  }
  return ScalarField(omegatheta.grid(), std::move(out));
}

ScalarField annulus_poisson_apply(const ScalarField& psi) {
  const AnnulusGrid& g = annulus_of(psi);
  const int rows = g.nr, cols = g.nz, modes = cols / 2 + 1;
  const double h = g.dr(), ih2 = 1.0 / (h * h);
  const auto v = psi.values();
  std::vector<cplx> s(static_cast<std::size_t>(rows) * modes);
  fft::forward_rows(rows, cols, v.data(), s.data());
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < modes; ++k) s[static_cast<std::size_t>(r) * modes + k] *= k * k;
  }
  std::vector<double> dzz(v.size());  // -∂z²ψ
  fft::inverse_rows(rows, cols, s.data(), dzz.data());
  std::vector<double> out(v.begin(), v.end());
  for (int i = 1; i < rows - 1; ++i) {
    const double rm = g.r(i) - 0.5 * h, rp = g.r(i) + 0.5 * h;
    for (int c = 0; c < cols; ++c) {
      const std::size_t n = static_cast<std::size_t>(i) * cols + c;
      out[n] = -((v[n + cols] - v[n]) / rp - (v[n] - v[n - cols]) / rm) * ih2 + dzz[n] / g.r(i);
    }
  }
  return ScalarField(psi.grid(), std::move(out));
}

AxisymState make_axisym_state(double t, ScalarField utheta, ScalarField omegatheta) {
  const AnnulusGrid& g = annulus_of(utheta);
  if (utheta.grid() != omegatheta.grid()) throw InputError("axisym state needs one grid");
  ScalarField psi = poisson_annulus(omegatheta);
  std::vector<double> ur(psi.size()), uz(psi.size());
  detail::spectral_cols_derivative(psi.values().data(), ur.data(), g.nr, g.nz);
  detail::fd4_rows(psi.values().data(), uz.data(), g.nr, g.nz, g.dr());
  ur = radial_scale(g, std::move(ur), -1);
  for (double& x : ur) x = -x;
  uz = radial_scale(g, std::move(uz), -1);
  for (int c = 0; c < g.nz; ++c) {
    ur[c] = 0.0;
    ur[static_cast<std::size_t>(g.nr - 1) * g.nz + c] = 0.0;
  }
  const Grid& grid = utheta.grid();
  VelocityField u{ScalarField(grid, std::move(ur)), ScalarField(grid, std::move(uz))};
  return AxisymState{t, std::move(utheta), std::move(omegatheta), std::move(psi), std::move(u)};
}

AxisymTendencies rhs_axisym(const AxisymState& s, const AxisymStepOptions& opt) {
  const AnnulusGrid& g = annulus_of(s.utheta);
  const int rows = g.nr, cols = g.nz;
  const int kmax = opt.dealias ? cols / 3 : -1;
  std::vector<double> gam = radial_scale(g, copy(s.utheta), 1);
  std::vector<double> zeta = radial_scale(g, copy(s.omegatheta), -1);
  std::vector<double> ur = copy(s.u.first), uz = copy(s.u.second);
  if (opt.dealias) {
    for (auto* v : {&gam, &zeta, &ur, &uz}) detail::truncate_cols(*v, rows, cols, kmax);
  }
  const std::size_t n = gam.size();
  std::vector<double> gr(n), gz(n), zr(n), zz(n);
  detail::fd4_rows(gam.data(), gr.data(), rows, cols, g.dr());
  detail::fd4_rows(zeta.data(), zr.data(), rows, cols, g.dr());
  detail::spectral_cols_derivative(gam.data(), gz.data(), rows, cols);
  detail::spectral_cols_derivative(zeta.data(), zz.data(), rows, cols);
  std::vector<double> g2(n);
  for (std::size_t i = 0; i < n; ++i) g2[i] = gam[i] * gam[i];
  if (opt.dealias) detail::truncate_cols(g2, rows, cols, kmax);
  std::vector<double> g2z(n);
  detail::spectral_cols_derivative(g2.data(), g2z.data(), rows, cols);
  g2z = radial_scale(g, std::move(g2z), -4);

  std::vector<double> a(n), b(n);
  const bool weno = opt.advection == AxisymAdvection::weno5;
  if (weno) {
    const std::vector<double> raw = radial_scale(g, copy(s.utheta), 1);
    detail::weno5_advect(raw.data(), uz.data(), a.data(), rows, cols, g.dz(), true, true);
    detail::weno5_advect(raw.data(), ur.data(), a.data(), rows, cols, g.dr(), false, false);
  }
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = weno ? -a[i] : -(ur[i] * gr[i] + uz[i] * gz[i]);
    b[i] = -(ur[i] * zr[i] + uz[i] * zz[i]);
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw BlowupError(s.t, fmt::format("non-finite tendency at t = {}", s.t));
    }
  }
  if (opt.dealias) {
    if (!weno) detail::truncate_cols(a, rows, cols, kmax);
    detail::truncate_cols(b, rows, cols, kmax);
  }
  for (std::size_t i = 0; i < n; ++i) b[i] += g2z[i];
  const Grid& grid = s.utheta.grid();
  return {ScalarField(grid, std::move(a)), ScalarField(grid, std::move(b))};
}

double axisym_dt_limit(const AxisymState& s, double cfl) {
  const AnnulusGrid& g = annulus_of(s.utheta);
  double umax = 0.0;
  for (std::size_t i = 0; i < s.u.first.size(); ++i) {
    umax = std::max(umax, std::hypot(s.u.first.values()[i], s.u.second.values()[i]));
  }
  return cfl * std::min(g.dr(), g.dz()) / std::max(1.0, umax);
}

AxisymState step_axisym(const AxisymState& s, double dt, const AxisymStepOptions& opt) {
  const double limit = axisym_dt_limit(s, opt.cfl);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw StepSizeError(fmt::format("dt = {} violates the CFL limit {}", dt, limit));
  }
  const AnnulusGrid& g = annulus_of(s.utheta);
  const Grid& grid = s.utheta.grid();
  const SymmetryClass cls = axisym_class();
  const ScalarField gam0(grid, radial_scale(g, copy(s.utheta), 1));
  const ScalarField zeta0(grid, radial_scale(g, copy(s.omegatheta), -1));
  auto stage = [&](const ScalarField& gam, const ScalarField& zeta, double t) {
    ScalarField ut(grid, radial_scale(g, copy(gam), -1));
    ScalarField wt(grid, radial_scale(g, copy(zeta), 1));
    if (opt.project) {
      ut = symmetry_project(ut, cls.of("utheta"));
      wt = symmetry_project(wt, cls.of("omegatheta"));
    }
    return make_axisym_state(t, std::move(ut), std::move(wt));
  };
  const AxisymTendencies k1 = rhs_axisym(s, opt);
  const AxisymState s2 = stage(gam0 + 0.5 * dt * k1.dgamma, zeta0 + 0.5 * dt * k1.dzeta,
                               s.t + 0.5 * dt);
  const AxisymTendencies k2 = rhs_axisym(s2, opt);
  const AxisymState s3 = stage(gam0 + 0.5 * dt * k2.dgamma, zeta0 + 0.5 * dt * k2.dzeta,
                               s.t + 0.5 * dt);
  const AxisymTendencies k3 = rhs_axisym(s3, opt);
  const AxisymState s4 = stage(gam0 + dt * k3.dgamma, zeta0 + dt * k3.dzeta, s.t + dt);
  const AxisymTendencies k4 = rhs_axisym(s4, opt);
  const double c = dt / 6.0;
  return stage(gam0 + c * (k1.dgamma + 2.0 * k2.dgamma + 2.0 * k3.dgamma + k4.dgamma),
               zeta0 + c * (k1.dzeta + 2.0 * k2.dzeta + 2.0 * k3.dzeta + k4.dzeta), s.t + dt);
}

}  // namespace bgl
