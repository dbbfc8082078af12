#include "bgl/diagnostics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bgl/error.hpp"
#include "bgl/fft.hpp"
#include "bgl/torus_solver.hpp"

namespace bgl {
namespace {

using cplx = std::complex<double>;

// ∫_{-π}^{π} y f(y) dy for the interpolant of n samples at y_j = -π + j·2π/n,
// given its coefficients c_k (k = 0..n/2) normalised by 1/n.
double line_moment(const cplx* c, int n) {
  double m = 0.0;
  for (int k = 1; k < n / 2; ++k) m += 4.0 * kPi * c[k].imag() / k;
  return m;
}

double trapz(const std::vector<double>& v, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i == 0 || i + 1 == v.size() ? 0.5 : 1.0) * v[i];
  }
  return s * h;
}

// 1D weights of [0, π] on a periodic axis of n samples starting at -π:
// indices n/2 .. n-1 and 0.
std::vector<double> half_period_weights(int n) {
  const double h = kTwoPi / n;
  std::vector<double> w(n, 0.0);
  for (int i = n / 2; i < n; ++i) w[i] = h;
  w[n / 2] = 0.5 * h;
  w[0] = 0.5 * h;
  return w;
}

ScalarField velocity_component_product(const ScalarField& a, const ScalarField& b) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
  return ScalarField(a.grid(), std::move(v));
}

double weighted_sum(const std::vector<double>& w, const ScalarField& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values()[i];
  return s;
}

std::string fmt_index(double v) {
  if (std::isinf(v)) return "inf";
  return fmt::format("{:g}", v);
}

}  // namespace

std::vector<std::string> csv_columns(const DiagnosticsConfig& cfg) {
  std::vector<std::string> c{"t",       "E_P",    "E_K",      "diss_acc",     "delta",
                             "A_press", "B_visc", "vort_int", "boundary_flux"};
  for (double s : cfg.s_list) c.push_back("Hs:" + fmt_index(s));
  for (double p : cfg.p_list) c.push_back("Lp_omega:" + fmt_index(p));
  for (const char* n : {"u_inf", "grad_rho_inf", "F_acc", "h"}) c.emplace_back(n);
  for (double s : cfg.s_list) c.push_back("Ms:" + fmt_index(s));
  c.emplace_back("eta");
  return c;
}

std::vector<std::optional<double>> csv_values(const DiagnosticsRow& r) {
  std::vector<std::optional<double>> v{r.t,     r.E_P,    r.E_K,      r.diss_acc,     r.delta,
                                       r.A_press, r.B_visc, r.vort_int, r.boundary_flux};
  v.insert(v.end(), r.Hs.begin(), r.Hs.end());
  v.insert(v.end(), r.Lp_omega.begin(), r.Lp_omega.end());
  for (const auto& x : {r.u_inf, r.grad_rho_inf, r.F_acc, r.h}) v.push_back(x);
  v.insert(v.end(), r.Ms.begin(), r.Ms.end());
  v.push_back(r.eta);
  return v;
}

double potential_energy(const ScalarField& rho) {
  const Grid& g = rho.grid();
  if (const auto* t = std::get_if<TorusGrid>(&g)) {
    // x1-average is the k1 = 0 column of the 2D spectrum
    const int modes = t->nx / 2 + 1;
    std::vector<cplx> s(static_cast<std::size_t>(t->ny) * modes);
    fft::forward_2d(t->ny, t->nx, rho.values().data(), s.data());
    std::vector<cplx> col(t->ny / 2 + 1);
    for (int k = 0; k <= t->ny / 2; ++k) col[k] = s[static_cast<std::size_t>(k) * modes];
    return kTwoPi * line_moment(col.data(), t->ny);
  }
  if (const auto* st = std::get_if<StripGrid>(&g)) {
    const auto w = detail::trapezoid(st->nz, st->dz());
    double sum = 0.0;
    for (int r = 0; r < st->nz; ++r) {
      double row = 0.0;
      for (int c = 0; c < st->nx; ++c) row += rho(r, c);
      sum += w[r] * st->x2(r) * row * st->dx();
    }
    return sum;
  }
  const auto& a = std::get<AnnulusGrid>(g);
  const int modes = a.nz / 2 + 1;
  std::vector<cplx> s(static_cast<std::size_t>(a.nr) * modes);
  fft::forward_rows(a.nr, a.nz, rho.values().data(), s.data());
  std::vector<double> m(a.nr);
  for (int r = 0; r < a.nr; ++r) m[r] = line_moment(s.data() + static_cast<std::size_t>(r) * modes, a.nz);
  return trapz(m, a.dr());
}

double kinetic_energy(const VelocityField& u) {
  return 0.5 * (integrate(velocity_component_product(u.first, u.first)) +
                integrate(velocity_component_product(u.second, u.second)));
}

double kinetic_energy(const SimState& s) {
  if (const auto* a = std::get_if<AxisymState>(&s)) {
    const auto& g = std::get<AnnulusGrid>(a->utheta.grid());
    const auto w = quadrature_weights(g);
    double sum = 0.0;
    for (int r = 0; r < g.nr; ++r) {
      for (int c = 0; c < g.nz; ++c) {
        const std::size_t i = static_cast<std::size_t>(r) * g.nz + c;
        const double ur = a->u.first.values()[i], uz = a->u.second.values()[i];
        const double ut = a->utheta.values()[i];
        sum += w[i] * g.r(r) * (ur * ur + uz * uz + ut * ut);
      }
    }
    return 0.5 * sum;
  }
  if (const auto* t = std::get_if<TorusState>(&s)) return kinetic_energy(t->u);
  return kinetic_energy(std::get<StripState>(s).u);
}

double ep_prime(const SimState& s) {
  if (const auto* t = std::get_if<TorusState>(&s)) {
    return integrate(velocity_component_product(t->rho, t->u.second));
  }
  if (const auto* st = std::get_if<StripState>(&s)) {
    return integrate(velocity_component_product(st->rho, st->u.second));
  }
  throw DomainError("ep_prime needs a density (torus or strip)");
}

EpSecond ep_second_decomposition(const TorusState& s, double nu) {
  if (!std::holds_alternative<TorusGrid>(s.rho.grid())) {
    throw DomainError("the E_P'' decomposition is defined on the torus only");
  }
  const ScalarField q = inverse_laplacian_torus(derivative(s.rho, Axis::second));
  const ScalarField a11 = derivative(s.u.first, Axis::first);
  const ScalarField a12 = derivative(s.u.first, Axis::second);   // ∂2u1
  const ScalarField a21 = derivative(s.u.second, Axis::first);   // ∂1u2
  const ScalarField a22 = derivative(s.u.second, Axis::second);
  std::vector<double> c(q.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x11 = a11.values()[i], x22 = a22.values()[i];
    c[i] = q.values()[i] * (x11 * x11 + 2.0 * a12.values()[i] * a21.values()[i] + x22 * x22);
  }
  EpSecond out;
  out.A_press = integrate(ScalarField(s.rho.grid(), std::move(c)));
  out.B_visc = nu == 0.0 ? 0.0
                         : nu * integrate(velocity_component_product(
                                    s.rho, laplacian_torus(s.u.second)));
  out.delta = delta_functional(s.rho);
  return out;
}

double grad_u_squared(const TorusState& s) { return spectral_l2_squared(transform(s.omega)); }

double energy_budget_residual(const std::vector<DiagnosticsRow>& series, double nu) {
  (void)nu;  // the dissipation column already carries ν
  if (series.empty()) throw InputError("energy budget needs a non-empty series");
  const auto& r0 = series.front();
  if (!r0.E_P || !r0.E_K) throw InputError("energy budget needs E_P and E_K columns");
  const double e0 = *r0.E_P + *r0.E_K;
  double scale = std::max(std::abs(e0), 1e-300);
  for (const auto& r : series) {
    if (!r.E_P || !r.E_K) throw InputError("energy budget needs E_P and E_K columns");
    scale = std::max(scale, *r.E_K);
  }
  double worst = 0.0;
  for (const auto& r : series) {
    const double lhs = *r.E_P + *r.E_K + r.diss_acc.value_or(0.0);
    worst = std::max(worst, std::abs(lhs - e0) / scale);
  }
  return worst;
}

std::vector<double> q_weights(const Grid& g) {
  std::vector<double> w(grid_size(g), 0.0);
  const int rows = grid_rows(g), cols = grid_cols(g);
  std::vector<double> rw, cw;
  if (const auto* t = std::get_if<TorusGrid>(&g)) {
    cw = half_period_weights(t->nx);
    rw = half_period_weights(t->ny);
  } else if (const auto* s = std::get_if<StripGrid>(&g)) {
    cw = half_period_weights(s->nx);
    rw = detail::trapezoid(s->nz, s->dz());
  } else {
    const auto& a = std::get<AnnulusGrid>(g);
    cw = half_period_weights(a.nz);
    rw = detail::trapezoid(a.nr, a.dr());
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) w[static_cast<std::size_t>(r) * cols + c] = rw[r] * cw[c];
  }
  return w;
}

double q_integral(const ScalarField& f) { return weighted_sum(q_weights(f.grid()), f); }

double q_lp_norm(const ScalarField& f, double p) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("L^p norm needs p >= 1 (got {})", p));
  const auto w = q_weights(f.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const double a = std::abs(f.values()[i]);
    if (std::isinf(p)) s = std::max(s, a);
    else s += w[i] * std::pow(a, p);
  }
  return std::isinf(p) ? s : std::pow(s, 1.0 / p);
}

double vorticity_integral(const SimState& s) {
  if (const auto* t = std::get_if<TorusState>(&s)) return q_integral(t->omega);
  if (const auto* st = std::get_if<StripState>(&s)) return q_integral(st->omega);
  return q_integral(std::get<AxisymState>(s).omegatheta);
}

std::vector<double> segment_values(const ScalarField& f, double x) {
  const Grid& g = f.grid();
  std::vector<double> v;
  if (const auto* t = std::get_if<TorusGrid>(&g)) {
    const int col = x == 0.0 ? t->nx / 2 : 0;
    for (int r = t->ny / 2; r < t->ny; ++r) v.push_back(f(r, col));
    v.push_back(f(0, col));
    return v;
  }
  int col = 0;
  if (const auto* s = std::get_if<StripGrid>(&g)) col = x == 0.0 ? s->nx / 2 : 0;
  else col = x == 0.0 ? std::get<AnnulusGrid>(g).nz / 2 : 0;
  for (int r = 0; r < f.rows(); ++r) v.push_back(f(r, col));
  return v;
}

double boundary_flux(const SimState& s) {
  if (const auto* a = std::get_if<AxisymState>(&s)) {
    const auto& g = std::get<AnnulusGrid>(a->utheta.grid());
    const auto top = segment_values(a->utheta, kPi);
    const auto bottom = segment_values(a->utheta, 0.0);
    std::vector<double> f(g.nr);
    for (int r = 0; r < g.nr; ++r) f[r] = (top[r] * top[r] - bottom[r] * bottom[r]) / g.r(r);
    return trapz(f, g.dr());
  }
  const ScalarField& rho =
      std::holds_alternative<TorusState>(s) ? std::get<TorusState>(s).rho : std::get<StripState>(s).rho;
  const double h = std::holds_alternative<TorusState>(s)
                       ? std::get<TorusGrid>(rho.grid()).dy()
                       : std::get<StripGrid>(rho.grid()).dz();
  return trapz(segment_values(rho, 0.0), h) - trapz(segment_values(rho, kPi), h);
}

double velocity_sup(const SimState& s) {
  const VelocityField& u = std::visit([](const auto& x) -> const VelocityField& { return x.u; }, s);
  double m = 0.0;
  for (std::size_t i = 0; i < u.first.size(); ++i) {
    m = std::max(m, std::hypot(u.first.values()[i], u.second.values()[i]));
  }
  return m;
}

namespace {

void line_extremes(const ScalarField& rho, DiagnosticsRow& row) {
  const auto a = segment_values(rho, 0.0);
  const auto b = segment_values(rho, kPi);
  row.line_a_min = *std::min_element(a.begin(), a.end());
  row.line_b_max = *std::max_element(b.begin(), b.end());
}

}  // namespace

DiagnosticsRow instantaneous_row(const SimState& s, double nu, const DiagnosticsConfig& cfg,
                                 const TracerSet* tracers) {
  DiagnosticsRow row;
  row.t = state_time(s);
  row.E_K = kinetic_energy(s);
  row.vort_int = vorticity_integral(s);
  row.boundary_flux = boundary_flux(s);
  row.u_inf = velocity_sup(s);
  row.Hs.assign(cfg.s_list.size(), std::nullopt);
  row.Ms.assign(cfg.s_list.size(), std::nullopt);
  const ScalarField* omega = nullptr;
  if (const auto* t = std::get_if<TorusState>(&s)) {
    omega = &t->omega;
    line_extremes(t->rho, row);
    row.E_P = potential_energy(t->rho);
    const EpSecond d = ep_second_decomposition(*t, nu);
    row.delta = d.delta;
    row.A_press = d.A_press;
    row.B_visc = d.B_visc;
    for (std::size_t i = 0; i < cfg.s_list.size(); ++i) row.Hs[i] = sobolev_norm(t->rho, cfg.s_list[i]);
    row.grad_rho_inf = grad_sup(t->rho);
    row.ep_prime = ep_prime(s);
    row.grad_u_sq = grad_u_squared(*t);
    if (tracers && tracers->x2.size() >= 2 && !tracers->degenerate) row.h = tracer_gap(*tracers);
  } else if (const auto* st = std::get_if<StripState>(&s)) {
    omega = &st->omega;
    line_extremes(st->rho, row);
    row.E_P = potential_energy(st->rho);
    row.grad_rho_inf = grad_sup(st->rho);
    row.ep_prime = ep_prime(s);
  } else {
    const auto& a = std::get<AxisymState>(s);
    omega = &a.omegatheta;
    const auto top = segment_values(a.utheta, kPi);
    const auto bottom = segment_values(a.utheta, 0.0);
    row.line_a_min = *std::min_element(top.begin(), top.end());
    double m = 0.0;
    for (double v : bottom) m = std::max(m, std::abs(v));
    row.line_b_max = m;
    const auto& g = std::get<AnnulusGrid>(a.utheta.grid());
    double gm = 0.0;
    for (int r = 0; r < g.nr; ++r) {
      for (int c = 0; c < g.nz; ++c) gm = std::max(gm, std::abs(g.r(r) * a.utheta(r, c)));
    }
    row.gamma_max = gm;
  }
  for (double p : cfg.p_list) row.Lp_omega.push_back(q_lp_norm(*omega, p));
  return row;
}

SeriesBuilder::SeriesBuilder(double nu, DiagnosticsConfig cfg) : nu_(nu), cfg_(std::move(cfg)) {}

void SeriesBuilder::observe(const SimState& s) {
  const double t = state_time(s);
  const auto* ts = std::get_if<TorusState>(&s);
  std::optional<double> gu, gr;
  if (ts) gu = grad_u_squared(*ts);
  if (ts) gr = grad_sup(ts->rho);
  else if (const auto* st = std::get_if<StripState>(&s)) gr = grad_sup(st->rho);
  if (started_) {
    const double dt = t - last_t_;
    if (gu) g_acc_ += 0.5 * dt * (last_gu_ + *gu);
    if (gr) f_acc_ += 0.5 * dt * (last_gr_ + *gr);
    if (gr && *gr > 0.0 && last_gr_ > 0.0) i_acc_ += 0.5 * dt * (1.0 / last_gr_ + 1.0 / *gr);
  }
  started_ = true;
  last_t_ = t;
  has_gu_ = gu.has_value();
  has_gr_ = gr.has_value();
  last_gu_ = gu.value_or(0.0);
  last_gr_ = gr.value_or(0.0);
}

const DiagnosticsRow& SeriesBuilder::emit(const SimState& s, const TracerSet* tracers) {
  DiagnosticsRow row = instantaneous_row(s, nu_, cfg_, tracers);
  if (has_gu_) {
    row.grad_u_sq_acc = g_acc_;
    row.diss_acc = nu_ * g_acc_;
  }
  if (has_gr_) {
    row.F_acc = f_acc_;
    row.inv_grad_acc = i_acc_;
  }
  if (std::holds_alternative<TorusState>(s)) {
    // window [T, 2T] with T = t/2 over the outputs so far
    const double T = 0.5 * row.t;
    for (std::size_t k = 0; k < cfg_.s_list.size(); ++k) {
      double m = row.Hs[k].value_or(0.0);
      for (const auto& r : rows_) {
        if (r.t >= T - 1e-12 && r.Hs[k]) m = std::max(m, *r.Hs[k]);
      }
      row.Ms[k] = m;
    }
    // G(T) by linear interpolation of the accumulated ‖∇u‖² on outputs
    std::vector<std::pair<double, double>> g;
    for (const auto& r : rows_) g.emplace_back(r.t, r.grad_u_sq_acc.value_or(0.0));
    g.emplace_back(row.t, g_acc_);
    double gT = g.front().second;
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (g[i].first >= T) {
        const auto& [t0, g0] = g[i - 1];
        const auto& [t1, g1] = g[i];
        const double w = t1 > t0 ? std::clamp((T - t0) / (t1 - t0), 0.0, 1.0) : 1.0;
        gT = (1.0 - w) * g0 + w * g1;
        break;
      }
    }
    row.eta = g_acc_ - gT;
  }
  rows_.push_back(std::move(row));
  return rows_.back();
}

}  // namespace bgl
