#include <doctest.h>

#include <cmath>
#include <random>

#include "bgl/diagnostics.hpp"
#include "bgl/error.hpp"
#include "bgl/operators.hpp"
#include "bgl/scenario.hpp"
#include "bgl/symmetry.hpp"
#include "bgl/torus_solver.hpp"

using namespace bgl;

namespace {

ScalarField smooth_random(const Grid& g, std::uint64_t seed, int kmax = 4) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::vector<std::array<double, 4>> ms;
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      ms.push_back({double(k1), double(k2), 0.3 * N(rng), 0.3 * N(rng)});
    }
  }
  return ScalarField::sample(g, [&](double x, double y) {
    double v = 0.0;
    for (const auto& m : ms) v += m[2] * std::cos(m[0] * x + m[1] * y) + m[3] * std::sin(m[0] * x + m[1] * y);
    return v;
  });
}

}  // namespace

TEST_CASE("torus tendencies") {
  const Grid g = TorusGrid::make(32, 32);
  const auto z = make_torus_state(0.0, ScalarField::zeros(g), ScalarField::zeros(g));
  const auto t0 = rhs_torus(z, 0.1);
  CHECK(t0.drho.max_abs() == 0.0);
  CHECK(t0.domega.max_abs() == 0.0);

  const auto rho = ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  const auto t1 = rhs_torus(make_torus_state(0.0, rho, ScalarField::zeros(g)), 0.0);
  const auto want = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK((t1.domega - want).max_abs() <= 1e-13);
  CHECK(t1.drho.max_abs() <= 1e-15);

  const auto strat = ScalarField::sample(g, [](double, double y) { return std::sin(y) + 0.3 * std::sin(2 * y); });
  const auto t2 = rhs_torus(make_torus_state(0.0, strat, ScalarField::zeros(g)), 0.01);
  CHECK(t2.drho.max_abs() <= 1e-14);
  CHECK(t2.domega.max_abs() <= 1e-14);
}

TEST_CASE("torus step: trivial states, CFL guard, Richardson order") {
  const Grid g = TorusGrid::make(32, 32);
  const auto z = make_torus_state(0.0, ScalarField::zeros(g), ScalarField::zeros(g));
  const auto z1 = step(z, 0.05, 0.01);
  CHECK(z1.rho.max_abs() == 0.0);
  CHECK(z1.omega.max_abs() == 0.0);
  CHECK(z1.t == doctest::Approx(0.05));

  const auto strat = ScalarField::sample(g, [](double, double y) { return std::sin(y); });
  const auto s0 = make_torus_state(0.0, strat, ScalarField::zeros(g));
  const auto s1 = step(s0, 0.05, 0.0);
  CHECK((s1.rho - strat).max_abs() <= 1e-13);
  CHECK(s1.omega.max_abs() <= 1e-13);

  CHECK_THROWS_AS(step(s0, 1.0, 0.0), StepSizeError);

  // one step of dt against two of dt/2: the gap shrinks like dt^5
  TorusStepOptions opt;
  opt.project = false;
  const auto r0 = make_torus_state(0.0, smooth_random(g, 1), smooth_random(g, 2));
  auto gap = [&](double dt) {
    const auto a = step(r0, dt, 0.01, nullptr, opt);
    const auto b = step(step(r0, dt / 2, 0.01, nullptr, opt), dt / 2, 0.01, nullptr, opt);
    return std::max((a.rho - b.rho).max_abs(), (a.omega - b.omega).max_abs());
  };
  const double e1 = gap(0.02), e2 = gap(0.01);
  CHECK(e1 / e2 > 20.0);
  CHECK(e1 / e2 < 48.0);
}

TEST_CASE("tracers on the symmetry segment") {
  const Grid g = TorusGrid::make(32, 32);
  TracerSet tr{{0.5, 1.5}, {"a", "b"}, false};
  const auto z = make_torus_state(0.0, ScalarField::zeros(g), ScalarField::zeros(g));
  const auto same = advect_tracers(z, tr, 0.1);
  CHECK(same.x2 == tr.x2);

  // ψ = -sin x1 sin x2 gives u2(0, x2) = sin x2
  const auto w = ScalarField::sample(g, [](double x, double y) { return -2 * std::sin(x) * std::sin(y); });
  const auto s = make_torus_state(0.0, ScalarField::zeros(g), w);
  CHECK(axis_velocity(s.u.second, 1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
  TracerSet mid{{kPi / 2}, {"a"}, false};
  const double dt = 1e-4;
  CHECK((advect_tracers(s, mid, dt).x2[0] - kPi / 2) / dt == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("tracer gap obeys the Gronwall lower bound") {
  ScenarioSpec spec;
  spec.name = "inviscid-t2";
  auto sc = make_scenario(spec, TorusGrid::make(64, 64));
  auto s = std::get<TorusState>(sc.state);
  TracerSet tr = *sc.tracers;
  const double h0 = tracer_gap(tr);
  double integral = 0.0;
  auto grad_u = [](const TorusState& st) {
    return std::max(grad_sup(st.u.first), grad_sup(st.u.second));
  };
  while (s.t < 1.0 - 1e-12) {
    const double dt = std::min(torus_dt_limit(s), 1.0 - s.t);
    const double g0 = grad_u(s);
    s = step(s, dt, 0.0, &tr);
    integral += 0.5 * dt * (g0 + grad_u(s));
    CHECK(!tr.degenerate);
    // |∇u| bounds each component derivative; the factor 2 is slack
    CHECK(tracer_gap(tr) >= 0.5 * h0 * std::exp(-2.0 * integral));
  }
}

TEST_CASE("inviscid torus invariants over T = 5") {
  ScenarioSpec spec;
  spec.name = "inviscid-t2";
  auto sc = make_scenario(spec, TorusGrid::make(128, 128));
  auto s = std::get<TorusState>(sc.state);
  TracerSet tr = *sc.tracers;
  TorusStepOptions opt;
  opt.advection = TorusAdvection::weno5;
  const double winf0 = s.omega.max_abs();
  double F = 0.0, last_g = grad_sup(s.rho);
  double worst_sign = 0.0;
  while (s.t < 5.0 - 1e-12) {
    const double dt = std::min(torus_dt_limit(s), 5.0 - s.t);
    s = step(s, dt, 0.0, &tr, opt);
    const double gnow = grad_sup(s.rho);
    F += 0.5 * dt * (last_g + gnow);
    last_g = gnow;
    CHECK(s.omega.max_abs() <= (winf0 + F) * 1.01);
    for (double v : segment_values(s.rho, 0.0)) worst_sign = std::min(worst_sign, v);
    for (double v : segment_values(s.rho, kPi)) worst_sign = std::min(worst_sign, -v);
  }
  CHECK(worst_sign >= -1e-8);
  CHECK(parity_defect(s.rho, torus_class().of("rho")) <= 1e-12);
  CHECK(parity_defect(s.omega, torus_class().of("omega")) <= 1e-12);
}

TEST_CASE("inviscid torus conservation while resolved") {
  ScenarioSpec spec;
  spec.name = "inviscid-t2";
  auto sc = make_scenario(spec, TorusGrid::make(128, 128));
  for (auto adv : {TorusAdvection::spectral, TorusAdvection::weno5}) {
    auto s = std::get<TorusState>(sc.state);
    TorusStepOptions opt;
    opt.advection = adv;
    const double l1 = lp_norm(s.rho, 1.0), l2 = lp_norm(s.rho, 2.0), linf = lp_norm(s.rho, kInf);
    const double e0 = kinetic_energy(SimState(s)) + potential_energy(s.rho);
    while (s.t < 2.0 - 1e-12) s = step(s, std::min(torus_dt_limit(s), 2.0 - s.t), 0.0, nullptr, opt);
    CHECK(lp_norm(s.rho, 1.0) == doctest::Approx(l1).epsilon(1e-3));
    CHECK(lp_norm(s.rho, 2.0) == doctest::Approx(l2).epsilon(1e-3));
    CHECK(lp_norm(s.rho, kInf) == doctest::Approx(linf).epsilon(1e-3));
    const double e = kinetic_energy(SimState(s)) + potential_energy(s.rho);
    // E_P(0) = E_K(0) = 0 here; measure against the kinetic energy gained
    const double drift = std::abs(e - e0) / kinetic_energy(SimState(s));
    MESSAGE("energy drift " << drift);
    CHECK(drift <= (adv == TorusAdvection::spectral ? 1e-6 : 1e-5));
  }
}
