#include <doctest.h>

#include <cmath>
#include <random>

#include "bgl/diagnostics.hpp"
#include "bgl/operators.hpp"
#include "bgl/scenario.hpp"
#include "bgl/strip_solver.hpp"
#include "bgl/symmetry.hpp"

using namespace bgl;

namespace {

// smooth in x1, rough in x2
ScalarField random_strip(const StripGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::vector<double> a(static_cast<std::size_t>(g.nz) * 7), b(a.size());
  for (auto& x : a) x = N(rng);
  for (auto& x : b) x = N(rng);
  std::vector<double> v(g.size());
  for (int r = 0; r < g.nz; ++r) {
    for (int c = 0; c < g.nx; ++c) {
      double s = 0.0;
      for (int k = 0; k < 7; ++k) {
        const std::size_t i = static_cast<std::size_t>(r) * 7 + k;
        s += a[i] * std::cos(k * g.x1(c)) + b[i] * std::sin(k * g.x1(c));
      }
      v[static_cast<std::size_t>(r) * g.nx + c] = s;
    }
  }
  return ScalarField(g, std::move(v));
}

double wall_u2(const StripState& s) {
  const auto& g = std::get<StripGrid>(s.rho.grid());
  double m = 0.0;
  for (int c = 0; c < g.nx; ++c) m = std::max({m, std::abs(s.u.second(0, c)), std::abs(s.u.second(g.nz - 1, c))});
  return m;
}

}  // namespace

TEST_CASE("strip Poisson: zero, eigenfunction convergence, discrete residual") {
  const auto g0 = StripGrid::make(32, 17);
  CHECK(poisson_dirichlet_strip(ScalarField::zeros(g0)).max_abs() == 0.0);

  std::vector<double> err;
  for (int nz : {17, 33, 65}) {
    const auto g = StripGrid::make(32, nz);
    const auto w = ScalarField::sample(g, [](double x, double y) { return 2.0 * std::sin(x) * std::sin(y); });
    const auto exact = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
    err.push_back((poisson_dirichlet_strip(w) - exact).max_abs());
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.05));

  const auto g = StripGrid::make(64, 33);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto w = random_strip(g, seed);
    const auto psi = poisson_dirichlet_strip(w);
    const auto back = strip_poisson_apply(psi);
    double res = 0.0;
    for (int r = 1; r < g.nz - 1; ++r) {
      for (int c = 0; c < g.nx; ++c) res = std::max(res, std::abs(back(r, c) - w(r, c)));
    }
    CHECK(res <= 1e-12 * w.max_abs());
    for (int c = 0; c < g.nx; ++c) {
      CHECK(psi(0, c) == 0.0);
      CHECK(psi(g.nz - 1, c) == 0.0);
    }
  }
}

TEST_CASE("strip step: zero state, stratified steady state, wall velocity") {
  const auto g = StripGrid::make(64, 33);
  const auto z = make_strip_state(0.0, ScalarField::zeros(g), ScalarField::zeros(g));
  const auto z1 = step_strip(z, 0.01);
  CHECK(z1.rho.max_abs() == 0.0);
  CHECK(z1.omega.max_abs() == 0.0);

  const auto rho = ScalarField::sample(g, [](double, double y) { return std::cos(y) + 0.3 * y * y; });
  auto s = make_strip_state(0.0, rho, ScalarField::zeros(g));
  for (auto adv : {StripAdvection::weno5, StripAdvection::spectral}) {
    StripStepOptions o;
    o.advection = adv;
    auto t = s;
    for (int i = 0; i < 10; ++i) t = step_strip(t, 0.04, o);
    CHECK((t.rho - rho).max_abs() <= 1e-13);
    CHECK(t.omega.max_abs() <= 1e-13);
  }

  ScenarioSpec spec;
  spec.name = "strip-invB";
  spec.perturbation = 0.05;
  spec.seed = 3;
  auto st = std::get<StripState>(make_scenario(spec, g).state);
  CHECK(wall_u2(st) == 0.0);
  for (int i = 0; i < 20; ++i) {
    st = step_strip(st, strip_dt_limit(st));
    CHECK(wall_u2(st) == 0.0);
  }
}

TEST_CASE("strip vorticity integral grows at 2 pi initially") {
  const auto g = StripGrid::make(128, 65);
  const auto rho = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  const auto s = make_strip_state(0.0, rho, ScalarField::zeros(g));
  // flux = ∫0^π cos 0 - cos π dx2 = 2π
  CHECK(boundary_flux(SimState(s)) == doctest::Approx(kTwoPi).epsilon(1e-12));
  for (auto adv : {StripAdvection::weno5, StripAdvection::spectral}) {
    StripStepOptions o;
    o.advection = adv;
    const auto d = rhs_strip(s, o);
    CHECK(q_integral(d.domega) == doctest::Approx(kTwoPi).epsilon(5e-3));
    const double dt = 1e-3;
    const auto s1 = step_strip(s, dt, o);
    const double rate = (vorticity_integral(SimState(s1)) - vorticity_integral(SimState(s))) / dt;
    CHECK(rate == doctest::Approx(kTwoPi).epsilon(5e-3));
  }
}

TEST_CASE("strip invariants while resolved (T = 1)") {
  const auto g = StripGrid::make(128, 65);
  ScenarioSpec spec;
  spec.name = "strip-invB";
  const auto sc = make_scenario(spec, g);
  auto s = std::get<StripState>(sc.state);
  const double l1 = lp_norm(s.rho, 1.0), linf = lp_norm(s.rho, kInf);
  const double e0 = potential_energy(s.rho) + kinetic_energy(SimState(s));
  const double tol = 1e-6 * linf;
  double ek_max = 0.0, worst_a = kInf, worst_b = -kInf, worst_ratio = kInf, last_a = 0.0;
  bool mono = true;
  while (s.t < 1.0 - 1e-12) {
    s = step_strip(s, std::min(strip_dt_limit(s), 1.0 - s.t));
    ek_max = std::max(ek_max, kinetic_energy(SimState(s)));
    for (double v : segment_values(s.rho, 0.0)) worst_a = std::min(worst_a, v);
    for (double v : segment_values(s.rho, kPi)) worst_b = std::max(worst_b, v);
    const double A = vorticity_integral(SimState(s));
    worst_ratio = std::min(worst_ratio, A / (sc.k0 * kPi * s.t));
    mono = mono && A >= last_a - 1e-8;
    last_a = A;
  }
  CHECK(lp_norm(s.rho, 1.0) == doctest::Approx(l1).epsilon(5e-3));
  CHECK(lp_norm(s.rho, kInf) == doctest::Approx(linf).epsilon(5e-3));
  const double e = potential_energy(s.rho) + kinetic_energy(SimState(s));
  const double drift = std::abs(e - e0) / ek_max;
  MESSAGE("strip energy drift " << drift);
  CHECK(drift <= 5e-4);
  CHECK(worst_a >= sc.k0 - tol);
  CHECK(worst_b <= tol);
  CHECK(worst_ratio >= 0.99);
  CHECK(mono);
  CHECK(parity_defect(s.rho, strip_class().of("rho")) <= 1e-12);
}

TEST_CASE("strip energy drift converges at second order") {
  ScenarioSpec spec;
  spec.name = "strip-invB";
  std::vector<double> drift;
  for (auto [nx, nz] : {std::pair{32, 17}, std::pair{64, 33}, std::pair{128, 65}}) {
    auto s = std::get<StripState>(make_scenario(spec, StripGrid::make(nx, nz)).state);
    const double e0 = potential_energy(s.rho) + kinetic_energy(SimState(s));
    while (s.t < 0.5 - 1e-12) s = step_strip(s, std::min(strip_dt_limit(s), 0.5 - s.t));
    const double e = potential_energy(s.rho) + kinetic_energy(SimState(s));
    drift.push_back(std::abs(e - e0) / kinetic_energy(SimState(s)));
  }
  MESSAGE("drift " << drift[0] << " " << drift[1] << " " << drift[2]);
  CHECK(drift[0] / drift[1] >= 3.5);
  CHECK(drift[1] / drift[2] >= 3.5);
}
