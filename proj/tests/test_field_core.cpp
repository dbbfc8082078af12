#include <doctest.h>

#include <cmath>
#include <random>

#include "bgl/error.hpp"
#include "bgl/operators.hpp"

using namespace bgl;

namespace {

double max_diff(const ScalarField& a, const ScalarField& b) { return (a - b).max_abs(); }

// band-limited random field with the given mean
ScalarField random_trig(const Grid& g, std::uint64_t seed, int kmax = 6, double mean = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  struct M {
    int k1, k2;
    double a, b;
  };
  std::vector<M> ms;
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      ms.push_back({k1, k2, N(rng), N(rng)});
    }
  }
  return ScalarField::sample(g, [&](double x, double y) {
    double v = mean;
    for (const auto& m : ms) v += m.a * std::cos(m.k1 * x + m.k2 * y) + m.b * std::sin(m.k1 * x + m.k2 * y);
    return v;
  });
}

}  // namespace

TEST_CASE("grids reject bad sizes and place the symmetry lines on samples") {
  CHECK_THROWS_AS(TorusGrid::make(15, 16), ConfigError);
  CHECK_THROWS_AS(TorusGrid::make(8, 8), ConfigError);
  CHECK_THROWS_AS(StripGrid::make(32, 16), ConfigError);
  CHECK_THROWS_AS(AnnulusGrid::make(16, 32), ConfigError);
  const auto t = TorusGrid::make(32, 16);
  CHECK(t.x1(16) == 0.0);
  CHECK(t.x1(0) == -kPi);
  CHECK(t.x2(8) == 0.0);
  const auto s = StripGrid::make(32, 17);
  CHECK(s.x2(0) == 0.0);
  CHECK(s.x2(16) == doctest::Approx(kPi).epsilon(1e-15));
  const auto a = AnnulusGrid::make(17, 16);
  CHECK(a.r(0) == kPi);
  CHECK(a.r(16) == doctest::Approx(kTwoPi).epsilon(1e-15));
}

TEST_CASE("fields reject non-finite samples") {
  const Grid g = TorusGrid::make(16, 16);
  std::vector<double> v(256, 0.0);
  v[7] = std::nan("");
  CHECK_THROWS_AS(ScalarField(g, v), InputError);
  CHECK_THROWS(ScalarField(g, std::vector<double>(10, 0.0)));
}

TEST_CASE("transform: zero, single harmonic, round trip, Parseval") {
  const Grid g = TorusGrid::make(64, 64);
  const auto z = transform(ScalarField::zeros(g));
  for (const auto& c : z.coef) CHECK(std::abs(c) == 0.0);

  const auto c1 = transform(ScalarField::sample(g, [](double x, double) { return std::cos(x); }));
  int nonzero = 0;
  for (int r = 0; r < c1.rows(); ++r) {
    for (int k = 0; k < c1.modes(); ++k) {
      if (std::abs(c1(r, k)) > 1e-14) {
        ++nonzero;
        CHECK(r == 0);
        CHECK(k == 1);
        // x = -π + j h puts a phase e^{-iπ} on the k = 1 coefficient
        CHECK(std::abs(c1(r, k) - std::complex<double>(-0.5, 0.0)) < 1e-14);
      }
    }
  }
  // the k = -1 partner is implied by the half-complex layout
  CHECK(nonzero == 1);

  for (const Grid& gg : {Grid(TorusGrid::make(64, 32)), Grid(StripGrid::make(32, 33)), Grid(AnnulusGrid::make(33, 32))}) {
    const auto f = random_trig(gg, 3, 6, 0.3);
    const auto back = inverse_transform(transform(f));
    CHECK(max_diff(back, f) <= 1e-12 * f.max_abs());
    const double phys = integrate(ScalarField(gg, [&] {
      std::vector<double> v(f.values().begin(), f.values().end());
      for (double& x : v) x *= x;
      return v;
    }()));
    CHECK(std::abs(spectral_l2_squared(transform(f)) - phys) <= 1e-10 * phys);
  }
}

TEST_CASE("derivative: spectral on periodic axes, fourth order on bounded axes") {
  const Grid g = TorusGrid::make(32, 32);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  const auto df = ScalarField::sample(g, [](double x, double) { return -std::sin(x); });
  CHECK(max_diff(derivative(f, Axis::first), df) <= 1e-12);
  CHECK(derivative(f, Axis::second).max_abs() <= 1e-14);

  // grid-refinement oracle on the strip: error ratio ~ 2^4 per halving
  double prev = 0.0;
  for (int nz : {33, 65, 129}) {
    const Grid s = StripGrid::make(16, nz);
    const auto h = ScalarField::sample(s, [](double, double y) { return std::sin(y); });
    const auto dh = ScalarField::sample(s, [](double, double y) { return std::cos(y); });
    const double err = max_diff(derivative(h, Axis::second), dh);
    if (prev > 0.0) CHECK(prev / err > 12.0);
    prev = err;
  }
}

TEST_CASE("inverse Laplacian and Biot-Savart") {
  const Grid g = TorusGrid::make(64, 64);
  const auto c = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  CHECK(max_diff(inverse_laplacian_torus(c), c) <= 1e-13);
  const auto cs = ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  CHECK(max_diff(inverse_laplacian_torus(cs), 0.5 * cs) <= 1e-13);
  const auto f = random_trig(g, 11);
  const auto gi = inverse_laplacian_torus(f);
  CHECK(max_diff(-laplacian_torus(gi), f) <= 1e-10 * f.max_abs());

  const auto u0 = biot_savart_torus(ScalarField::zeros(g));
  CHECK(u0.first.max_abs() == 0.0);
  CHECK(u0.second.max_abs() == 0.0);

  // ψ = sin x1 sin x2 solves -Δψ = ω; u = (∂2ψ, -∂1ψ)
  const auto w = ScalarField::sample(g, [](double x, double y) { return 2 * std::sin(x) * std::sin(y); });
  const auto u = biot_savart_torus(w);
  CHECK(max_diff(u.first, ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); })) <= 1e-13);
  CHECK(max_diff(u.second, ScalarField::sample(g, [](double x, double y) { return -std::cos(x) * std::sin(y); })) <= 1e-13);
  CHECK(max_diff(curl(u), w) <= 1e-12);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto om = random_trig(TorusGrid::make(32, 32), 100 + seed, 5);
    const auto v = biot_savart_torus(om);
    CHECK(divergence(v).max_abs() <= 1e-10 * om.max_abs());
    CHECK(max_diff(curl(v), om) <= 1e-10 * om.max_abs());
  }
}

TEST_CASE("Sobolev norms and delta") {
  const Grid g = TorusGrid::make(64, 64);
  const auto f = ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-12));
  CHECK(sobolev_norm(ScalarField::constant(g, 3.0), 1.5) == 0.0);
  CHECK_THROWS_AS(sobolev_norm(f, 7.0), Error);
  CHECK_THROWS_AS(sobolev_norm(ScalarField::zeros(StripGrid::make(16, 17)), 1.0), DomainError);

  CHECK(delta_functional(ScalarField::sample(g, [](double, double y) { return std::sin(y); })) <= 1e-24);
  CHECK(delta_functional(f) == doctest::Approx(kPi * kPi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(delta_functional(ScalarField::zeros(StripGrid::make(16, 17))), DomainError);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = random_trig(g, seed, 8, 0.7);
    const double l2 = sobolev_norm(r, 0.0);
    const auto centred = r - ScalarField::constant(g, r.mean());
    CHECK(std::abs(l2 - lp_norm(centred, 2.0)) <= 1e-10 * l2);
    CHECK(delta_functional(r) <= l2 * l2 + 1e-10);
  }
}

TEST_CASE("Lp norms and gradient sup") {
  const Grid g = TorusGrid::make(64, 64);
  CHECK(lp_norm(ScalarField::sample(g, [](double, double y) { return std::sin(y); }), kInf) == doctest::Approx(1.0));
  const auto f = ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  CHECK(grad_sup(f) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm(ScalarField::constant(StripGrid::make(32, 33), 1.0), 1.0) == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
  CHECK_THROWS_AS(lp_norm(f, 0.5), DomainError);
}
