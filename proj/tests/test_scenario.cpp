#include <doctest.h>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <random>

#include "bgl/axisym_solver.hpp"
#include "bgl/diagnostics.hpp"
#include "bgl/error.hpp"
#include "bgl/operators.hpp"
#include "bgl/scenario.hpp"
#include "bgl/symmetry.hpp"
#include "bgl/torus_solver.hpp"

using namespace bgl;

namespace {

ScalarField noise(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> v(grid_size(g));
  for (auto& x : v) x = U(rng);
  return ScalarField(g, std::move(v));
}

Scenario make(const std::string& name, std::uint64_t seed = 0, double perturbation = 0.0) {
  ScenarioSpec spec;
  spec.name = name;
  spec.seed = seed;
  spec.perturbation = perturbation;
  auto [n1, n2] = scenario_default_grid(name);
  return make_scenario(spec, scenario_grid(name, n1 / 2, name == "axisym-3d" ? n2 : n2 / 2 + (n2 % 2)));
}

}  // namespace

TEST_CASE("inviscid-t2 defaults: k0, a, b") {
  const auto sc = make("inviscid-t2");
  CHECK(sc.k0 == doctest::Approx(1.0).epsilon(1e-12));
  // a maximum is only located to about sqrt(machine epsilon)
  CHECK(sc.a == doctest::Approx(kPi / 2.0).epsilon(1e-7));
  // root-find oracle for sin(b) = 1/2 on (0, π/2)
  const auto [lo, hi] = boost::math::tools::bisect([](double x) { return std::sin(x) - 0.5; }, 0.0, kPi / 2.0,
                                                   boost::math::tools::eps_tolerance<double>(50));
  CHECK(sc.b == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
  CHECK(sc.b == doctest::Approx(kPi / 6.0).epsilon(1e-9));
  REQUIRE(sc.tracers);
  CHECK(sc.tracers->x2.size() >= 2);
}

TEST_CASE("strip and axisym defaults") {
  const auto st = make("strip-invB");
  CHECK(st.k0 == doctest::Approx(1.0).epsilon(1e-12));
  const auto& s = std::get<StripState>(st.state);
  for (double v : segment_values(s.rho, 0.0)) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  for (double v : segment_values(s.rho, kPi)) CHECK(v == doctest::Approx(-1.0).epsilon(1e-15));

  const auto ax = make("axisym-3d");
  const auto& a = std::get<AxisymState>(ax.state);
  CHECK(ax.k0 == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : segment_values(a.utheta, kPi)) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  for (double v : segment_values(a.utheta, 0.0)) CHECK(std::abs(v) <= 1e-15);
}

TEST_CASE("every generated scenario passes its validator") {
  for (const auto& name : scenario_names()) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      ScenarioSpec spec;
      spec.name = name;
      spec.seed = seed;
      spec.perturbation = seed == 0 ? 0.0 : 0.05;
      auto [n1, n2] = scenario_default_grid(name);
      const auto sc = make_scenario(spec, scenario_grid(name, n1 / 4, name == "axisym-3d" ? n2 / 4 + 0 : n2 / 4 + (n2 % 2)));
      const auto rep = validate_assumptions(sc.state, spec);
      for (const auto& c : rep.clauses) {
        INFO(name << " seed " << seed << ": " << c.name << " " << c.detail);
        CHECK(c.pass);
      }
    }
  }
}

TEST_CASE("validator rejects broken data") {
  const Grid g = TorusGrid::make(64, 64);
  ScenarioSpec spec;
  spec.name = "inviscid-t2";
  const auto odd = make_torus_state(0.0, ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); }),
                                    ScalarField::zeros(g));
  const auto rep = validate_assumptions(SimState(odd), spec);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.find("rho even in x1") != nullptr);
  CHECK_FALSE(rep.find("rho even in x1")->pass);

  spec.name = "viscous-t2";
  const auto zero = make_torus_state(0.0, ScalarField::zeros(g), ScalarField::zeros(g));
  const auto rz = validate_assumptions(SimState(zero), spec);
  REQUIRE(rz.find("not identically zero") != nullptr);
  CHECK_FALSE(rz.find("not identically zero")->pass);

  spec.name = "strip-invB";
  CHECK_FALSE(validate_assumptions(SimState(zero), spec).ok());
}

TEST_CASE("generation errors name the clause") {
  ScenarioSpec spec;
  spec.name = "inviscid-t2";
  spec.amplitude = -1.0;
  CHECK_THROWS_WITH_AS(make_scenario(spec, TorusGrid::make(32, 32)), doctest::Contains("k0 > 0"), ConfigError);
  spec.name = "axisym-3d";
  spec.amplitude = 1.0;
  spec.perturbation = 0.5;
  CHECK_THROWS_WITH_AS(make_scenario(spec, AnnulusGrid::make(33, 32)), doctest::Contains("k0/8"), ConfigError);
  spec.name = "strip-invB";
  spec.perturbation = 0.0;
  CHECK_THROWS_AS(make_scenario(spec, TorusGrid::make(32, 32)), ConfigError);
  spec.name = "no-such";
  CHECK_THROWS_AS(make_scenario(spec, TorusGrid::make(32, 32)), ConfigError);
}

TEST_CASE("symmetry projection") {
  const Grid g = TorusGrid::make(64, 32);
  const auto cls = torus_class();
  CHECK(biot_savart_consistent(cls));
  CHECK(biot_savart_consistent(strip_class()));
  CHECK(biot_savart_consistent(axisym_class()));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = noise(g, seed);
    for (const auto& [name, p] : cls.fields) {
      const auto once = symmetry_project(f, p);
      const auto twice = symmetry_project(once, p);
      CHECK((twice - once).max_abs() <= 1e-15);
      CHECK(parity_defect(once, p) <= 1e-15);
      // commutes with the Laplacian
      CHECK((laplacian_torus(once) - symmetry_project(laplacian_torus(f), p)).max_abs() <=
            1e-12 * laplacian_torus(f).max_abs());
    }
  }
  const auto sym = ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::sin(2 * y); });
  double moved = -1.0;
  const auto same = symmetry_project(sym, cls.of("rho"), &moved);
  CHECK((same - sym).max_abs() <= 1e-15);
  CHECK(moved <= 1e-15);
  const auto wrong = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
  CHECK(symmetry_project(wrong, cls.of("rho")).max_abs() <= 1e-15);

  // derivative parity follows the class algebra
  const auto rho = symmetry_project(noise(g, 9), cls.of("rho"));
  const auto d1 = derivative(rho, Axis::first);
  CHECK(parity_defect(d1, differentiate(cls.of("rho"), Axis::first)) <= 1e-12);
  CHECK(differentiate(cls.of("rho"), Axis::first) == FieldParity{Parity::odd, Parity::odd});

  const Grid a = AnnulusGrid::make(17, 32);
  const auto f = noise(a, 3);
  const auto p = symmetry_project(f, axisym_class().of("omegatheta"));
  CHECK((symmetry_project(p, axisym_class().of("omegatheta")) - p).max_abs() <= 1e-15);
}
