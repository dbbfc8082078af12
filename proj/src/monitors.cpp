#include "bgl/monitors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgl/error.hpp"

namespace bgl {
namespace {

double need(const std::optional<double>& v, const char* column) {
  if (!v) throw InputError(fmt::format("growth monitors need the {} column", column));
  return *v;
}

std::size_t p_index(const DiagnosticsConfig& cfg, double p) {
  for (std::size_t i = 0; i < cfg.p_list.size(); ++i) {
    if (cfg.p_list[i] == p) return i;
  }
  throw InputError(p == kInf ? "growth monitors need the Lp_omega:inf column"
                             : fmt::format("growth monitors need the Lp_omega:{} column", p));
}

double lp_at(const DiagnosticsRow& r, std::size_t i) {
  if (i >= r.Lp_omega.size() || !r.Lp_omega[i]) throw InputError("growth monitors need Lp_omega");
  return *r.Lp_omega[i];
}

std::string p_label(double p) { return std::isinf(p) ? "inf" : fmt::format("{:g}", p); }

// d/dt at output i from the Lagrange interpolant through five outputs, the
// window centred on i where the series allows it (fourth order).
double centered(const std::vector<DiagnosticsRow>& s, std::size_t i,
                const std::vector<double>& f) {
  const std::size_t n = s.size();
  const std::size_t w = std::min<std::size_t>(5, n);
  std::size_t lo = i >= w / 2 ? i - w / 2 : 0;
  lo = std::min(lo, n - w);
  const double ti = s[i].t;
  double d = 0.0;
  for (std::size_t j = lo; j < lo + w; ++j) {
    if (j == i) {
      double sum = 0.0;
      for (std::size_t k = lo; k < lo + w; ++k) {
        if (k != i) sum += 1.0 / (ti - s[k].t);
      }
      d += f[i] * sum;
      continue;
    }
    double num = 1.0, den = 1.0;
    for (std::size_t k = lo; k < lo + w; ++k) {
      if (k == j) continue;
      den *= s[j].t - s[k].t;
      if (k != i) num *= ti - s[k].t;
    }
    d += f[j] * num / den;
  }
  return d;
}

BoundMonitor lower(std::string name, double threshold = 1.0 - kBoundSlack) {
  BoundMonitor b;
  b.name = std::move(name);
  b.threshold = threshold;
  return b;
}

BoundMonitor upper(std::string name, double threshold, bool asserted = true) {
  BoundMonitor b;
  b.name = std::move(name);
  b.upper = true;
  b.threshold = threshold;
  b.asserted = asserted;
  return b;
}

void symmetric_checks(const std::vector<DiagnosticsRow>& s, MonitorReport& rep) {
  auto mono = lower("A_mono", -1e-8);
  for (std::size_t i = 1; i < s.size(); ++i) {
    mono.samples.push_back({s[i].t, need(s[i].vort_int, "vort_int") - need(s[i - 1].vort_int, "vort_int")});
  }
  rep.bounds.push_back(std::move(mono));

  auto cons = upper("dA/dt = flux", kBoundSlack);
  std::vector<double> a;
  for (const auto& r : s) a.push_back(need(r.vort_int, "vort_int"));
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double flux = need(s[i].boundary_flux, "boundary_flux");
    const double d = centered(s, i, a);
    cons.samples.push_back({s[i].t, std::abs(d - flux) / std::max(std::abs(flux), 1e-12)});
  }
  rep.bounds.push_back(std::move(cons));
}

void torus_identities(const std::vector<DiagnosticsRow>& s, bool asserted, MonitorReport& rep) {
  std::vector<double> ep, epp;
  for (const auto& r : s) {
    ep.push_back(need(r.E_P, "E_P"));
    epp.push_back(need(r.ep_prime, "ep_prime"));
  }
  const double scale1 = std::max(ep.front(), 1.0);
  auto first = upper("E_P' = int rho u2", 1e-4, asserted);
  auto second = upper("E_P'' = A + B - delta", 1e-3);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    first.samples.push_back({s[i].t, std::abs(centered(s, i, ep) - epp[i]) / scale1});
    const double A = need(s[i].A_press, "A_press"), B = need(s[i].B_visc, "B_visc"),
                 d = need(s[i].delta, "delta");
    const double scale2 = std::max({std::abs(A), std::abs(B), d, 1.0});
    second.samples.push_back({s[i].t, std::abs(centered(s, i, epp) - (A + B - d)) / scale2});
  }
  rep.bounds.push_back(std::move(first));
  rep.bounds.push_back(std::move(second));
}

void budget(const std::vector<DiagnosticsRow>& s, const MonitorContext& ctx, double tol,
            bool asserted, MonitorReport& rep) {
  double scale = std::max(std::abs(ctx.energy0), 1e-300);
  for (const auto& r : s) scale = std::max(scale, need(r.E_K, "E_K"));
  auto b = upper("energy budget", tol, asserted);
  for (const auto& r : s) {
    const double e = need(r.E_P, "E_P") + need(r.E_K, "E_K") + r.diss_acc.value_or(0.0);
    b.samples.push_back({r.t, std::abs(e - ctx.energy0) / scale});
  }
  rep.bounds.push_back(std::move(b));
}

void viscous(const std::vector<DiagnosticsRow>& s, const MonitorContext& ctx,
             const DiagnosticsConfig& cfg, MonitorReport& rep) {
  auto lo = lower("energy_bound E_P >= 0", -kBoundSlack);
  auto hi = upper("energy_bound E_P <= E(0)", 1.0 + kBoundSlack);
  const double e0 = std::max(std::abs(ctx.energy0), 1e-300);
  for (const auto& r : s) {
    lo.samples.push_back({r.t, need(r.E_P, "E_P") / e0});
    hi.samples.push_back({r.t, need(r.E_P, "E_P") / e0});
  }
  rep.bounds.push_back(std::move(lo));
  rep.bounds.push_back(std::move(hi));
  budget(s, ctx, 1e-5, true, rep);
  torus_identities(s, true, rep);
  // limsup statements: trajectories of t^{-e} M_s(t), never asserted
  for (std::size_t k = 0; k < cfg.s_list.size(); ++k) {
    const double sv = cfg.s_list[k];
    const double e = sv * (2.0 * sv - 1.0) / (8.0 * sv - 2.0);
    auto g = lower(fmt::format("growth Hs:{:g} t^-{:.4g}", sv, e));
    g.asserted = false;
    for (const auto& r : s) {
      if (r.t <= 0.0) continue;
      if (k >= r.Ms.size() || !r.Ms[k]) throw InputError("growth monitors need the Ms columns");
      g.samples.push_back({r.t, *r.Ms[k] * std::pow(r.t, -e)});
    }
    rep.bounds.push_back(std::move(g));
  }
}

void inviscid_torus(const std::vector<DiagnosticsRow>& s, const MonitorContext& ctx,
                    const DiagnosticsConfig& cfg, MonitorReport& rep) {
  const std::size_t pinf = p_index(cfg, kInf);
  auto rhoc = lower("rhoc");
  auto wmono = lower("w_mono");
  auto ineqA = lower("ineqA");
  auto omlb1 = lower("omlb1");
  auto omup = lower("omup");
  auto floor = lower("grad_rho >= k0/pi");
  auto f32 = lower("F(t) t^-3/2");
  f32.asserted = false;
  auto sign = lower("rho_sign", -1e-8);
  for (const auto& r : s) {
    sign.samples.push_back({r.t, std::min(need(r.line_a_min, "line_a_min"), -need(r.line_b_max, "line_b_max"))});
    const double g = need(r.grad_rho_inf, "grad_rho_inf");
    const double A = need(r.vort_int, "vort_int");
    if (r.h) {
      rhoc.samples.push_back({r.t, g * *r.h / (0.5 * ctx.k0)});
      wmono.samples.push_back({r.t, need(r.boundary_flux, "boundary_flux") / (0.5 * ctx.k0 * *r.h)});
    }
    const double rhs = 0.25 * ctx.k0 * ctx.k0 * need(r.inv_grad_acc, "inv_grad_acc") + ctx.A0;
    if (rhs > 0.0) ineqA.samples.push_back({r.t, A / rhs});
    const double winf = lp_at(r, pinf);
    if (A > 0.0) omlb1.samples.push_back({r.t, winf / (kC0 / ctx.E0 * A * A * A)});
    if (winf > 0.0) {
      omup.samples.push_back({r.t, (need(r.F_acc, "F_acc") + ctx.omega0_inf) / winf});
    }
    floor.samples.push_back({r.t, g / (ctx.k0 / kPi)});
    if (r.t >= 1.0) f32.samples.push_back({r.t, need(r.F_acc, "F_acc") * std::pow(r.t, -1.5)});
  }
  for (auto* b : {&sign, &rhoc, &wmono, &ineqA, &omlb1, &omup, &floor, &f32}) rep.bounds.push_back(std::move(*b));
  symmetric_checks(s, rep);
  // the upwinded ρ transport is not exactly -u·∇ρ, so E_P' is reported only
  torus_identities(s, false, rep);
  budget(s, ctx, 1e-6, false, rep);
}

void strip(const std::vector<DiagnosticsRow>& s, const MonitorContext& ctx,
           const DiagnosticsConfig& cfg, MonitorReport& rep) {
  const std::size_t p1 = p_index(cfg, 1.0), pinf = p_index(cfg, kInf);
  const double T0 = rep.T0;
  auto ineqA = lower("ineq_A");
  std::vector<BoundMonitor> lp;
  for (double p : cfg.p_list) lp.push_back(lower("omega_lp2 p=" + p_label(p)));
  auto bdu = lower("bd_u");
  auto ulin = lower("u_inf >= k0 t/4");
  auto l1 = lower("omega_l1");
  auto l1a = lower("omega_l1 >= A");
  auto rl = lower("rho_lower");
  auto floor = lower("grad_rho >= k0/pi");
  double gsup = 0.0;
  for (const auto& r : s) {
    const double A = need(r.vort_int, "vort_int");
    const double g = need(r.grad_rho_inf, "grad_rho_inf");
    gsup = std::max(gsup, g);
    const double lin = ctx.k0 * kPi * r.t + ctx.A0;
    if (lin > 0.0) ineqA.samples.push_back({r.t, A / lin});
    if (r.t >= T0 && A != 0.0) {
      for (std::size_t i = 0; i < cfg.p_list.size(); ++i) {
        const double p = cfg.p_list[i];
        const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
        const double bound = kC0 * std::pow(ctx.E0, -1.0 + inv) * std::pow(std::abs(A), 3.0 - 2.0 * inv);
        lp[i].samples.push_back({r.t, lp_at(r, i) / bound});
      }
    }
    const double uinf = need(r.u_inf, "u_inf");
    if (A > 0.0) {
      bdu.samples.push_back({r.t, 4.0 * kPi * uinf / A});
      l1a.samples.push_back({r.t, lp_at(r, p1) / A});
    }
    if (r.t > 0.0 && r.t >= T0) {
      const double c = ctx.A0 >= 0.0 ? 0.25 : 0.125;
      ulin.samples.push_back({r.t, uinf / (c * ctx.k0 * r.t)});
    }
    // ω is odd in x1: the domain holds two copies of Q
    const double l1rhs = ctx.k0 * kPi * r.t - ctx.omega0_l1;
    if (l1rhs > 0.0) l1.samples.push_back({r.t, 2.0 * lp_at(r, p1) / l1rhs});
    const double grow = lp_at(r, pinf) - ctx.omega0_inf;
    if (r.t > 0.0 && grow > 0.0) rl.samples.push_back({r.t, gsup * r.t / grow});
    floor.samples.push_back({r.t, g / (ctx.k0 / kPi)});
  }
  rep.bounds.push_back(std::move(ineqA));
  for (auto& b : lp) rep.bounds.push_back(std::move(b));
  for (auto* b : {&bdu, &ulin, &l1, &l1a, &rl, &floor}) rep.bounds.push_back(std::move(*b));
  symmetric_checks(s, rep);
}

void axisym(const std::vector<DiagnosticsRow>& s, const MonitorContext& ctx,
            const DiagnosticsConfig& cfg, MonitorReport& rep) {
  const double k2 = ctx.k0 * ctx.k0;
  const double T0 = rep.T0;
  auto rate = lower("rate >= k0^2/10");
  auto b1 = lower("u_bd1");
  auto b2 = upper("u_bd2", 1.0 + kBoundSlack);
  auto alin = lower(ctx.A0 >= 0.0 ? "a1" : "a2");
  std::vector<BoundMonitor> lp;
  for (double p : cfg.p_list) lp.push_back(lower("omega_lp p=" + p_label(p)));
  auto gam = upper("max |r u^theta| drift", 1e-3);
  for (const auto& r : s) {
    const double A = need(r.vort_int, "vort_int");
    rate.samples.push_back({r.t, need(r.boundary_flux, "boundary_flux") / (0.1 * k2)});
    b1.samples.push_back({r.t, need(r.line_a_min, "u^theta(r,pi)") / (0.5 * ctx.k0)});
    b2.samples.push_back({r.t, need(r.line_b_max, "u^theta(r,0)") / (0.25 * ctx.k0)});
    if (r.t > 0.0 && r.t >= T0) {
      alin.samples.push_back({r.t, A / ((ctx.A0 >= 0.0 ? 0.1 : 0.05) * k2 * r.t)});
    }
    if (r.t >= T0 && A != 0.0) {
      for (std::size_t i = 0; i < cfg.p_list.size(); ++i) {
        const double p = cfg.p_list[i];
        const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
        const double bound = kC0 * std::pow(ctx.E0, -1.0 + inv) * std::pow(std::abs(A), 3.0 - 2.0 * inv);
        lp[i].samples.push_back({r.t, lp_at(r, i) / bound});
      }
    }
    gam.samples.push_back({r.t, std::abs(need(r.gamma_max, "gamma_max") / ctx.gamma0 - 1.0)});
  }
  for (auto* b : {&rate, &b1, &b2, &alin}) rep.bounds.push_back(std::move(*b));
  for (auto& b : lp) rep.bounds.push_back(std::move(b));
  rep.bounds.push_back(std::move(gam));
  symmetric_checks(s, rep);
}

}  // namespace

double MonitorContext::waiting_time() const {
  if (A0 >= 0.0 || k0 <= 0.0) return 0.0;
  if (scenario == "axisym-3d") return 20.0 * std::abs(A0) / (k0 * k0);
  return 2.0 * std::abs(A0) / (k0 * kPi);
}

MonitorContext monitor_context(const SimState& initial, const std::string& scenario, double k0,
                               double nu) {
  MonitorContext c;
  c.scenario = scenario;
  c.nu = nu;
  c.k0 = k0;
  c.A0 = vorticity_integral(initial);
  const Grid& g = state_grid(initial);
  const auto w = q_weights(g);
  if (const auto* a = std::get_if<AxisymState>(&initial)) {
    c.energy0 = kinetic_energy(initial);
    // ∫_Q (u_r² + u_z²) dr dz <= (1/π) ∫_Q r|u|² dr dz = E_K / π
    c.E0 = c.energy0 / kPi;
    c.omega0_l1 = 2.0 * q_lp_norm(a->omegatheta, 1.0);
    c.omega0_inf = a->omegatheta.max_abs();
    const auto& ag = std::get<AnnulusGrid>(g);
    for (int r = 0; r < ag.nr; ++r) {
      for (int z = 0; z < ag.nz; ++z) c.gamma0 = std::max(c.gamma0, std::abs(ag.r(r) * a->utheta(r, z)));
    }
    return c;
  }
  const bool torus = std::holds_alternative<TorusState>(initial);
  const ScalarField& rho = torus ? std::get<TorusState>(initial).rho : std::get<StripState>(initial).rho;
  const ScalarField& omega = torus ? std::get<TorusState>(initial).omega : std::get<StripState>(initial).omega;
  const VelocityField& u = torus ? std::get<TorusState>(initial).u : std::get<StripState>(initial).u;
  double usq = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    usq += w[i] * (u.first.values()[i] * u.first.values()[i] + u.second.values()[i] * u.second.values()[i]);
  }
  c.E0 = usq + 4.0 * kPi * q_lp_norm(rho, 1.0);
  c.omega0_l1 = (torus ? 4.0 : 2.0) * q_lp_norm(omega, 1.0);
  c.omega0_inf = omega.max_abs();
  c.energy0 = potential_energy(rho) + kinetic_energy(initial);
  return c;
}

MonitorSample BoundMonitor::worst() const {
  if (samples.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  auto cmp = [](const MonitorSample& a, const MonitorSample& b) { return a.value < b.value; };
  return upper ? *std::max_element(samples.begin(), samples.end(), cmp)
               : *std::min_element(samples.begin(), samples.end(), cmp);
}

bool BoundMonitor::pass() const {
  for (const auto& s : samples) {
    if (!std::isfinite(s.value)) return false;
    if (upper ? s.value > threshold : s.value < threshold) return false;
  }
  return true;
}

bool MonitorReport::pass() const {
  return std::all_of(bounds.begin(), bounds.end(),
                     [](const BoundMonitor& b) { return !b.asserted || b.pass(); });
}

const BoundMonitor* MonitorReport::find(std::string_view name) const {
  for (const auto& b : bounds) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

MonitorReport growth_monitors(const std::vector<DiagnosticsRow>& series, const MonitorContext& ctx,
                              const DiagnosticsConfig& cfg) {
  MonitorReport rep;
  rep.T0 = ctx.waiting_time();
  if (series.empty() || series.back().t <= 0.0) return rep;
  if (ctx.scenario == "viscous-t2") viscous(series, ctx, cfg, rep);
  else if (ctx.scenario == "inviscid-t2") inviscid_torus(series, ctx, cfg, rep);
  else if (ctx.scenario == "strip-invB") strip(series, ctx, cfg, rep);
  else if (ctx.scenario == "axisym-3d") axisym(series, ctx, cfg, rep);
  else throw InputError(fmt::format("no growth monitors for scenario '{}'", ctx.scenario));
  return rep;
}

std::string format_monitor_report(const MonitorReport& r) {
  std::string out = fmt::format("T0 {:.6g}\n", r.T0);
  for (const auto& b : r.bounds) {
    const auto w = b.worst();
    const char* verdict = b.samples.empty() ? "EMPTY" : !b.asserted ? "REPORT" : b.pass() ? "PASS" : "FAIL";
    out += fmt::format("{:<28} {} {:>14.8g} at t={:<10.6g} {} {:g}  {}\n", b.name, b.upper ? "max" : "min",
                       w.value, w.t, b.upper ? "<=" : ">=", b.threshold, verdict);
  }
  return out;
}

}  // namespace bgl
