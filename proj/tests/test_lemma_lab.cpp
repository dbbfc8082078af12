#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "bgl/error.hpp"
#include "bgl/lemma_lab.hpp"
#include "bgl/operators.hpp"

using namespace bgl;

namespace {

const std::vector<double> kP{1.0, 2.0, 4.0, kInf};

bool all_pass(const LemmaReport& r) {
  for (const auto& c : r.checks) {
    if (c.asserted && !c.pass) {
      MESSAGE("failed: " << c.name << " measured " << c.measured << " bound " << c.bound);
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("omega-lp on sin x1 sin x2") {
  const TrigStreamfunction psi({{1, 1, 0.0, 0.0}});
  // ψ = sin x1 sin x2 = ½cos(x1 - x2) - ½cos(x1 + x2)
  const TrigStreamfunction f({{1, -1, 0.5, 0.0}, {1, 1, -0.5, 0.0}});
  const auto r = check_omega_lp(f, kP);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double A = GK::integrate([](double y) {
    return GK::integrate([&](double x) { return 2.0 * std::sin(x) * std::sin(y); }, 0.0, kPi, 5, 1e-14);
  }, 0.0, kPi, 5, 1e-14);
  const double E0 = GK::integrate([](double y) {
    return GK::integrate([&](double x) {
      const double u1 = std::sin(x) * std::cos(y), u2 = -std::cos(x) * std::sin(y);
      return u1 * u1 + u2 * u2;
    }, 0.0, kPi, 5, 1e-14);
  }, 0.0, kPi, 5, 1e-14);
  CHECK(A == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(E0 == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-12));
  CHECK(*r.value("A") == doctest::Approx(A).epsilon(1e-10));
  CHECK(*r.value("E0") == doctest::Approx(E0).epsilon(1e-10));
  CHECK_FALSE(r.degenerate);
  CHECK(all_pass(r));
  const auto* linf = r.check("omega Linf lower bound");
  REQUIRE(linf != nullptr);
  CHECK(linf->measured == doctest::Approx(2.0).epsilon(1e-6));
  const double c0 = 1.0 / (128.0 * kPi * kPi);
  CHECK(linf->bound == doctest::Approx(c0 * std::max(512.0 / (kPi * kPi / 2.0), 8.0)).epsilon(1e-9));
  (void)psi;
}

TEST_CASE("omega-lp degenerate and sign-symmetric cases") {
  const auto zero = check_omega_lp(TrigStreamfunction({}), kP);
  CHECK(zero.degenerate);
  CHECK(zero.pass());

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = TrigStreamfunction::random(seed);
    auto modes = f.modes();
    for (auto& m : modes) {
      m.a = -m.a;
      m.b = -m.b;
    }
    const auto r = check_omega_lp(f, kP);
    const auto n = check_omega_lp(TrigStreamfunction(modes), kP);
    CHECK(r.pass() == n.pass());
    CHECK(*r.value("A") == doctest::Approx(-*n.value("A")).epsilon(1e-12));
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
      CHECK(r.checks[i].measured == doctest::Approx(n.checks[i].measured).epsilon(1e-10));
    }
    const auto* l1 = r.check("L1 >= |A|");
    REQUIRE(l1 != nullptr);
    CHECK(l1->pass);
    CHECK(r.pass());
  }
}

TEST_CASE("smallinx1-b closed form") {
  const Grid g = TorusGrid::make(128, 128);
  const auto mu = ScalarField::sample(g, [](double x, double y) { return (1.0 - std::cos(x)) * std::sin(y); });
  const auto r = check_smallinx1_b(mu, {1.0, 2.0});
  CHECK(*r.value("gbar") == doctest::Approx(kPi / 2.0).epsilon(1e-10));
  CHECK(*r.value("delta") == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-10));
  CHECK(*r.value("g_variance") == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-10));
  const auto* b = r.check("(b) g(0) = 0");
  REQUIRE(b != nullptr);
  CHECK(std::abs(b->measured) <= 1e-14);
  CHECK(all_pass(r));

  const auto neg = ScalarField::sample(g, [](double x, double y) { return -(1.0 - std::cos(x)) * std::sin(y); });
  CHECK_THROWS_AS(check_smallinx1_b(neg, {1.0}), InputError);
  const auto odd1 = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK_THROWS_AS(check_smallinx1_b(odd1, {1.0}), InputError);
}

TEST_CASE("smallinx1-a: preconditions, delta <= A, scaling") {
  const Grid g = TorusGrid::make(128, 128);
  CHECK_THROWS_AS(check_smallinx1_a(ScalarField::zeros(g), {1.0}), InputError);
  const auto even2 = ScalarField::sample(g, [](double x, double y) {
    return std::exp(-4.0 * (x * x + y * y));
  });
  CHECK_THROWS_AS(check_smallinx1_a(even2, {1.0}), InputError);

  const auto mu = random_compact_mu(5, 128);
  const auto r = check_smallinx1_a(mu, {1.0, 2.0});
  const double A = *r.value("A"), delta = *r.value("delta");
  CHECK(delta <= A);
  CHECK(r.pass());
  const auto r2 = check_smallinx1_a(mu * 2.0, {1.0, 2.0});
  CHECK(*r2.value("A") == doctest::Approx(4.0 * A).epsilon(1e-12));
  CHECK(*r2.value("delta") == doctest::Approx(4.0 * delta).epsilon(1e-12));
  CHECK(*r2.value("B") == doctest::Approx(2.0 * *r.value("B")).epsilon(1e-12));
}

TEST_CASE("sin power integral") {
  // ∫_0^π sin^{-1/2} = √π Γ(1/4)/Γ(3/4), times π for the x1 direction
  const double exact = kPi * std::sqrt(kPi) * std::tgamma(0.25) / std::tgamma(0.75);
  CHECK(sin_power_integral() == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("suites are deterministic across thread counts") {
  SuiteOptions o;
  o.samples = 6;
  o.seed = 7;
  o.threads = 1;
  const auto a = run_omega_lp_suite(o);
  o.threads = 3;
  const auto b = run_omega_lp_suite(o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == 7 + i);
    CHECK(report_csv_row(a[i]) == report_csv_row(b[i]));
  }
  o.resolution = 64;
  o.threads = 1;
  const auto c = run_smallinx1_b_suite(o);
  o.threads = 2;
  const auto d = run_smallinx1_b_suite(o);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(report_csv_row(c[i]) == report_csv_row(d[i]));
  CHECK(summarize(c).violations.empty());
}
