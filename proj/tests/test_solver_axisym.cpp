#include <doctest.h>

#include <cmath>
#include <random>

#include "bgl/axisym_solver.hpp"
#include "bgl/diagnostics.hpp"
#include "bgl/scenario.hpp"
#include "bgl/symmetry.hpp"

using namespace bgl;

namespace {

ScalarField random_annulus(const AnnulusGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::vector<double> a(static_cast<std::size_t>(g.nr) * 6), b(a.size());
  for (auto& x : a) x = N(rng);
  for (auto& x : b) x = N(rng);
  std::vector<double> v(g.size());
  for (int r = 0; r < g.nr; ++r) {
    for (int c = 0; c < g.nz; ++c) {
      double s = 0.0;
      for (int k = 0; k < 6; ++k) {
        const std::size_t i = static_cast<std::size_t>(r) * 6 + k;
        s += a[i] * std::cos(k * g.z(c)) + b[i] * std::sin(k * g.z(c));
      }
      v[static_cast<std::size_t>(r) * g.nz + c] = s;
    }
  }
  return ScalarField(g, std::move(v));
}

std::pair<double, double> gamma_range(const AxisymState& s) {
  const auto& g = std::get<AnnulusGrid>(s.utheta.grid());
  double lo = kInf, hi = -kInf;
  for (int r = 0; r < g.nr; ++r) {
    for (int c = 0; c < g.nz; ++c) {
      lo = std::min(lo, g.r(r) * s.utheta(r, c));
      hi = std::max(hi, g.r(r) * s.utheta(r, c));
    }
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("annulus Poisson: zero, manufactured solution, discrete residual") {
  const auto g0 = AnnulusGrid::make(17, 16);
  CHECK(poisson_annulus(ScalarField::zeros(g0)).max_abs() == 0.0);

  // ψ* = sin z sin(r - π): -∂r((1/r)∂rψ) - (1/r)∂z²ψ = sin z (2 sin(r-π)/r + cos(r-π)/r²)
  std::vector<double> err;
  for (int nr : {17, 33, 65}) {
    const auto g = AnnulusGrid::make(nr, 32);
    const auto w = ScalarField::sample(g, [](double r, double z) {
      return std::sin(z) * (2.0 * std::sin(r - kPi) / r + std::cos(r - kPi) / (r * r));
    });
    const auto exact = ScalarField::sample(g, [](double r, double z) { return std::sin(z) * std::sin(r - kPi); });
    err.push_back((poisson_annulus(w) - exact).max_abs());
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.05));

  const auto g = AnnulusGrid::make(33, 32);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto w = random_annulus(g, seed);
    const auto psi = poisson_annulus(w);
    const auto back = annulus_poisson_apply(psi);
    double res = 0.0;
    for (int r = 1; r < g.nr - 1; ++r) {
      for (int c = 0; c < g.nz; ++c) res = std::max(res, std::abs(back(r, c) - w(r, c)));
    }
    CHECK(res <= 1e-12 * w.max_abs());
  }
}

TEST_CASE("axisym step: zero state, potential swirl, wall velocity") {
  const auto g = AnnulusGrid::make(33, 32);
  const auto z = make_axisym_state(0.0, ScalarField::zeros(g), ScalarField::zeros(g));
  const auto z1 = step_axisym(z, 0.01);
  CHECK(z1.utheta.max_abs() == 0.0);
  CHECK(z1.omegatheta.max_abs() == 0.0);

  const auto u = ScalarField::sample(g, [](double r, double) { return 3.0 / r; });
  auto s = make_axisym_state(0.0, u, ScalarField::zeros(g));
  for (int i = 0; i < 10; ++i) s = step_axisym(s, 0.04);
  CHECK((s.utheta - u).max_abs() <= 1e-13);
  CHECK(s.omegatheta.max_abs() <= 1e-13);

  ScenarioSpec spec;
  spec.name = "axisym-3d";
  spec.perturbation = 0.05;
  spec.seed = 2;
  auto st = std::get<AxisymState>(make_scenario(spec, g).state);
  for (int i = 0; i < 20; ++i) {
    st = step_axisym(st, axisym_dt_limit(st));
    for (int c = 0; c < g.nz; ++c) {
      CHECK(st.u.first(0, c) == 0.0);
      CHECK(st.u.first(g.nr - 1, c) == 0.0);
    }
  }
}

TEST_CASE("swirl production at t = 0 is ln 2") {
  const auto g = AnnulusGrid::make(129, 128);
  const auto u = ScalarField::sample(g, [](double, double z) { return 0.5 * (1.0 - std::cos(z)); });
  const auto s = make_axisym_state(0.0, u, ScalarField::zeros(g));
  // u(r, π) = 1, u(r, 0) = 0: ∫_π^{2π} dr / r = ln 2
  CHECK(boundary_flux(SimState(s)) == doctest::Approx(std::log(2.0)).epsilon(1e-4));
  const double dt = 1e-3;
  const auto s1 = step_axisym(s, dt);
  const double rate = (vorticity_integral(SimState(s1)) - vorticity_integral(SimState(s))) / dt;
  CHECK(rate == doctest::Approx(std::log(2.0)).epsilon(5e-3));
}

TEST_CASE("axisym conservation at 65 x 64") {
  ScenarioSpec spec;
  spec.name = "axisym-3d";
  const auto sc = make_scenario(spec, AnnulusGrid::make(65, 64));
  {
    auto s = std::get<AxisymState>(sc.state);
    const auto [lo0, hi0] = gamma_range(s);
    const double ke0 = kinetic_energy(SimState(s));
    double gdrift = 0.0, kdrift = 0.0;
    while (s.t < 3.0 - 1e-12) {
      s = step_axisym(s, std::min(axisym_dt_limit(s), 3.0 - s.t));
      const auto [lo, hi] = gamma_range(s);
      gdrift = std::max({gdrift, std::abs(lo - lo0) / hi0, std::abs(hi - hi0) / hi0});
      kdrift = std::max(kdrift, std::abs(kinetic_energy(SimState(s)) - ke0) / ke0);
    }
    MESSAGE("gamma drift " << gdrift << " energy drift " << kdrift);
    CHECK(gdrift <= 1e-3);
    CHECK(kdrift <= 1e-4);
    CHECK(parity_defect(s.omegatheta, axisym_class().of("omegatheta")) <= 1e-12);
  }
  {
    // upwinded swirl transport keeps the range of Γ through T = 5
    AxisymStepOptions o;
    o.advection = AxisymAdvection::weno5;
    auto s = std::get<AxisymState>(sc.state);
    const auto [lo0, hi0] = gamma_range(s);
    double lo = lo0, hi = hi0;
    while (s.t < 5.0 - 1e-12) {
      s = step_axisym(s, std::min(axisym_dt_limit(s), 5.0 - s.t), o);
      const auto [a, b] = gamma_range(s);
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
    CHECK(lo >= lo0 - 1e-3 * hi0);
    CHECK(hi <= hi0 * (1.0 + 1e-3));
  }
}
