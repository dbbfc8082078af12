#include "bgl/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "bgl/axisym_solver.hpp"
#include "bgl/error.hpp"
#include "bgl/fft.hpp"
#include "bgl/strip_solver.hpp"
#include "bgl/symmetry.hpp"
#include "bgl/torus_solver.hpp"

namespace bgl {
namespace {

constexpr int kPerturbBand = 8;

struct Mode {
  int k1, k2;
  double amp;
};

// Random modes with |k| <= 8, amplitudes normalised to Σ|a| = 1 so that the
// matching cos/sin sum is bounded by 1 in absolute value.
std::vector<Mode> random_modes(std::mt19937_64& rng, int k1_min, int k2_min) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<Mode> modes;
  double total = 0.0;
  for (int k1 = k1_min; k1 <= kPerturbBand; ++k1) {
    for (int k2 = k2_min; k2 <= kPerturbBand; ++k2) {
      if (k1 * k1 + k2 * k2 > kPerturbBand * kPerturbBand) continue;
      // decaying spectrum keeps the data visibly smooth
      const double a = U(rng) / (1.0 + k1 * k1 + k2 * k2);
      modes.push_back({k1, k2, a});
      total += std::abs(a);
    }
  }
  for (auto& m : modes) m.amp /= total;
  return modes;
}

using Basis = double (*)(double);

double eval_modes(const std::vector<Mode>& modes, Basis f1, Basis f2, double x, double y) {
  double v = 0.0;
  for (const auto& m : modes) v += m.amp * f1(m.k1 * x) * f2(m.k2 * y);
  return v;
}

double cosd(double x) { return std::cos(x); }
double sind(double x) { return std::sin(x); }

void require(bool ok, const std::string& clause, const std::string& detail) {
  if (!ok) throw ConfigError(fmt::format("scenario violates '{}': {}", clause, detail));
}

// Golden-section maximisation of f on [lo, hi].
double argmax(const std::function<double(double)>& f, double lo, double hi) {
  const int n = 4096;
  int best = 0;
  double fbest = -1e300;
  for (int i = 0; i <= n; ++i) {
    const double v = f(lo + (hi - lo) * i / n);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / n;
  double b = lo + (hi - lo) * std::min(best + 1, n) / n;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) >= f(d)) b = d;
    else a = c;
  }
  return 0.5 * (a + b);
}

std::vector<double> column(const ScalarField& f, int col) {
  std::vector<double> v(f.rows());
  for (int r = 0; r < f.rows(); ++r) v[r] = f(r, col);
  return v;
}

// Values of a torus field on {x1 = col} × [0, π].
std::vector<double> torus_segment(const ScalarField& f, int col) {
  const auto& g = std::get<TorusGrid>(f.grid());
  std::vector<double> v;
  for (int r = g.ny / 2; r < g.ny; ++r) v.push_back(f(r, col));
  v.push_back(f(0, col));  // x2 = -π ≡ π
  return v;
}

double tail_fraction(const ScalarField& f) {
  const Grid& g = f.grid();
  const int rows = f.rows(), cols = f.cols(), modes = cols / 2 + 1;
  std::vector<std::complex<double>> s(static_cast<std::size_t>(rows) * modes);
  const bool torus = std::holds_alternative<TorusGrid>(g);
  if (torus) fft::forward_2d(rows, cols, f.values().data(), s.data());
  else fft::forward_rows(rows, cols, f.values().data(), s.data());
  double total = 0.0, tail = 0.0;
  for (int r = 0; r < rows; ++r) {
    const int k2 = torus ? std::abs(wavenumber(r, rows)) : 0;
    for (int k = 0; k < modes; ++k) {
      const double e = std::norm(s[static_cast<std::size_t>(r) * modes + k]);
      total += e;
      if (k > cols / 3 || k2 > rows / 3) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"viscous-t2", "inviscid-t2", "strip-invB",
                                              "axisym-3d"};
  return names;
}

Model scenario_model(const std::string& name) {
  if (name == "viscous-t2") return Model::torus_viscous;
  if (name == "inviscid-t2") return Model::torus_inviscid;
  if (name == "strip-invB") return Model::strip_inviscid;
  if (name == "axisym-3d") return Model::axisym_euler;
  throw ConfigError(fmt::format("unknown scenario '{}'", name));
}

std::pair<int, int> scenario_default_grid(const std::string& name) {
  switch (scenario_model(name)) {
    case Model::strip_inviscid: return {256, 129};
    case Model::axisym_euler: return {129, 128};
    default: return {256, 256};
  }
}

Grid scenario_grid(const std::string& name, int n1, int n2) {
  switch (scenario_model(name)) {
    case Model::strip_inviscid: return StripGrid::make(n1, n2);
    case Model::axisym_euler: return AnnulusGrid::make(n1, n2);
    default: return TorusGrid::make(n1, n2);
  }
}

Scenario make_scenario(const ScenarioSpec& spec, const Grid& grid) {
  const Model model = scenario_model(spec.name);
  const bool grid_ok = std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if (model == Model::strip_inviscid) return std::is_same_v<G, StripGrid>;
        if (model == Model::axisym_euler) return std::is_same_v<G, AnnulusGrid>;
        return std::is_same_v<G, TorusGrid>;
      },
      grid);
  if (!grid_ok) {
    throw ConfigError(fmt::format("scenario {} cannot run on a {} grid", spec.name, grid_name(grid)));
  }
  const double A = spec.amplitude, al = spec.alpha, eps = spec.perturbation;
  require(std::isfinite(A) && std::isfinite(al) && std::isfinite(eps) &&
              std::isfinite(spec.modulation),
          "finite parameters", "non-finite scenario parameter");
  std::mt19937_64 rng(spec.seed);
  std::optional<SimState> state;
  std::optional<TracerSet> tracers;
  double k0 = 0.0, a = 0.0, b = 0.0;

  if (model == Model::torus_viscous || model == Model::torus_inviscid) {
    const SymmetryClass cls = torus_class();
    const auto q = random_modes(rng, 0, 0);  // cos·cos: even/even
    const auto p = random_modes(rng, 1, 1);  // sin·sin: odd/odd
    auto qv = [&](double x, double y) { return eval_modes(q, cosd, cosd, x, y); };
    auto pv = [&](double x, double y) { return eval_modes(p, sind, sind, x, y); };
    std::function<double(double, double)> rho0;
    if (model == Model::torus_viscous) {
      const double m = spec.modulation;
      require(A > 0.0, "(A3) not identically zero, rho0 >= 0 for x2 >= 0",
              fmt::format("amplitude {} must be positive", A));
      require(std::abs(m) + std::abs(eps) < 1.0, "(A3) rho0 >= 0 for x2 >= 0",
              fmt::format("|modulation| + |perturbation| = {} must stay below 1",
                          std::abs(m) + std::abs(eps)));
      rho0 = [=](double x, double y) {
        return A * std::sin(y) * (1.0 - std::cos(x)) *
               (1.0 + m * std::cos(x) * std::cos(2.0 * y) + eps * qv(x, y));
      };
    } else {
      require(A > 0.0, "k0 > 0", fmt::format("amplitude {} must be positive", A));
      require(std::abs(eps) <= 0.5, "rho0 >= 0 on {0}x[0,pi]",
              fmt::format("|perturbation| = {} exceeds 1/2", std::abs(eps)));
      rho0 = [=](double x, double y) {
        return A * std::cos(x) * std::sin(y) * (1.0 + eps * qv(x, y));
      };
    }
    auto omega0 = [=](double x, double y) {
      return al * std::sin(x) * std::sin(y) + eps * std::abs(A) * pv(x, y);
    };
    ScalarField rho = symmetry_project(ScalarField::sample(grid, rho0), cls.of("rho"));
    ScalarField omega = symmetry_project(ScalarField::sample(grid, omega0), cls.of("omega"));
    state = make_torus_state(0.0, std::move(rho), std::move(omega));
    if (model == Model::torus_inviscid) {
      auto line = [&](double y) { return rho0(0.0, y); };
      a = argmax(line, 0.0, kPi);
      k0 = line(a);
      // b: largest point below a where the profile falls to k0/2
      const int n = 4096;
      double hi = a, lo = a;
      for (int i = 1; i <= n; ++i) {
        lo = a * (1.0 - static_cast<double>(i) / n);
        if (line(lo) < 0.5 * k0) break;
        hi = lo;
      }
      require(line(lo) <= 0.5 * k0, "rho0(0,b) = k0/2", "profile never reaches k0/2");
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (line(mid) < 0.5 * k0) lo = mid;
        else hi = mid;
      }
      b = 0.5 * (lo + hi);
      tracers = TracerSet{{a, b}, {"a", "b"}, false};
    }
  } else if (model == Model::strip_inviscid) {
    const SymmetryClass cls = strip_class();
    require(A > 0.0, "rho0 >= k0 > 0 on {0}x[0,pi]", fmt::format("amplitude {} must be positive", A));
    require(std::abs(eps) <= 0.25, "rho0 >= k0 > 0 on {0}x[0,pi]",
            fmt::format("|perturbation| = {} exceeds 1/4", std::abs(eps)));
    const auto q = random_modes(rng, 0, 0);
    const auto p = random_modes(rng, 1, 1);
    auto rho0 = [=](double x, double y) {
      return A * (std::cos(x) + eps * eval_modes(q, cosd, cosd, x, y));
    };
    auto omega0 = [=](double x, double y) {
      return al * std::sin(x) * std::sin(y) + eps * A * eval_modes(p, sind, sind, x, y);
    };
    ScalarField rho = symmetry_project(ScalarField::sample(grid, rho0), cls.of("rho"));
    ScalarField omega = symmetry_project(ScalarField::sample(grid, omega0), cls.of("omega"));
    state = make_strip_state(0.0, std::move(rho), std::move(omega));
  } else {
    const SymmetryClass cls = axisym_class();
    require(A > 0.0, "utheta0 >= k0 > 0 on z=pi", fmt::format("k0 = {} must be positive", A));
    require(std::abs(eps) <= 1.0 / 16.0, "|utheta0| <= k0/8 on z=0",
            fmt::format("|perturbation| = {} exceeds 1/16", std::abs(eps)));
    const auto q = random_modes(rng, 0, 0);
    const auto p = random_modes(rng, 1, 1);
    // first = r, second = z; radial dependence through r - π
    auto ut0 = [=](double r, double z) {
      return A * (0.5 * (1.0 - std::cos(z)) + eps * eval_modes(q, cosd, cosd, r - kPi, z));
    };
    auto wt0 = [=](double r, double z) {
      return al * std::sin(z) * std::sin(r - kPi) + eps * A * eval_modes(p, sind, sind, r - kPi, z);
    };
    ScalarField ut = symmetry_project(ScalarField::sample(grid, ut0), cls.of("utheta"));
    ScalarField wt = symmetry_project(ScalarField::sample(grid, wt0), cls.of("omegatheta"));
    state = make_axisym_state(0.0, std::move(ut), std::move(wt));
  }
  if (model != Model::torus_inviscid) k0 = measure_k0(*state, spec.name);
  return Scenario{std::move(*state), std::move(tracers), k0, a, b};
}

double measure_k0(const SimState& state, const std::string& scenario) {
  switch (scenario_model(scenario)) {
    case Model::torus_inviscid: {
      const auto& s = std::get<TorusState>(state);
      const auto seg = torus_segment(s.rho, std::get<TorusGrid>(s.rho.grid()).nx / 2);
      return *std::max_element(seg.begin(), seg.end());
    }
    case Model::strip_inviscid: {
      const auto& s = std::get<StripState>(state);
      const auto col = column(s.rho, std::get<StripGrid>(s.rho.grid()).nx / 2);
      return *std::min_element(col.begin(), col.end());
    }
    case Model::axisym_euler: {
      const auto col = column(std::get<AxisymState>(state).utheta, 0);
      return *std::min_element(col.begin(), col.end());
    }
    default: return 0.0;
  }
}

bool AssumptionReport::ok() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

const Clause* AssumptionReport::find(const std::string& name) const {
  for (const auto& c : clauses) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AssumptionReport validate_assumptions(const SimState& state, const ScenarioSpec& spec) {
  AssumptionReport rep;
  const Model model = scenario_model(spec.name);
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.clauses.push_back({std::move(name), pass, std::move(detail)});
  };
  auto parity = [&](const std::string& label, const ScalarField& f, FieldParity p) {
    const double d = parity_defect(f, p);
    add(label, d <= 1e-12, fmt::format("relative defect {:.3g}", d));
  };
  auto smooth = [&](const std::string& label, const ScalarField& f) {
    const double t = tail_fraction(f);
    add(label + " smooth (spectral tail)", t <= 1e-10, fmt::format("tail energy fraction {:.3g}", t));
  };
  constexpr auto E = Parity::even, O = Parity::odd, N = Parity::none;

  const bool torus_model = model == Model::torus_viscous || model == Model::torus_inviscid;
  if (torus_model != std::holds_alternative<TorusState>(state) ||
      (model == Model::strip_inviscid) != std::holds_alternative<StripState>(state) ||
      (model == Model::axisym_euler) != std::holds_alternative<AxisymState>(state)) {
    add("state matches scenario model", false, "state type does not match " + spec.name);
    return rep;
  }

  if (torus_model) {
    const auto& s = std::get<TorusState>(state);
    const auto& g = std::get<TorusGrid>(s.rho.grid());
    const double scale = std::max(s.rho.max_abs(), 1e-300);
    const double tol = 1e-12 * scale;
    parity("rho even in x1", s.rho, {E, N});
    parity("rho odd in x2", s.rho, {N, O});
    parity("omega odd in x1", s.omega, {O, N});
    parity("omega odd in x2", s.omega, {N, O});
    smooth("rho", s.rho);
    smooth("omega", s.omega);
    add("not identically zero", s.rho.max_abs() > 0.0, fmt::format("max|rho| = {}", s.rho.max_abs()));
    const auto axis = torus_segment(s.rho, g.nx / 2);
    if (model == Model::torus_viscous) {
      double on_axis = 0.0;
      for (int r = 0; r < g.ny; ++r) on_axis = std::max(on_axis, std::abs(s.rho(r, g.nx / 2)));
      add("rho = 0 on the x2-axis", on_axis <= tol, fmt::format("max |rho(0, x2)| = {:.3g}", on_axis));
      double lo = 0.0;
      for (int r = g.ny / 2; r < g.ny; ++r) {
        for (int c = 0; c < g.nx; ++c) lo = std::min(lo, s.rho(r, c));
      }
      add("rho >= 0 for x2 >= 0", lo >= -tol, fmt::format("min = {:.3g}", lo));
    } else {
      const double lo = *std::min_element(axis.begin(), axis.end());
      add("rho >= 0 on {0}x[0,pi]", lo >= -tol, fmt::format("min = {:.3g}", lo));
      const auto far = torus_segment(s.rho, 0);
      const double hi = *std::max_element(far.begin(), far.end());
      add("rho <= 0 on {pi}x[0,pi]", hi <= tol, fmt::format("max = {:.3g}", hi));
      const double k0 = *std::max_element(axis.begin(), axis.end());
      add("k0 > 0", k0 > tol, fmt::format("k0 = {}", k0));
    }
  } else if (model == Model::strip_inviscid) {
    const auto& s = std::get<StripState>(state);
    const auto& g = std::get<StripGrid>(s.rho.grid());
    const double tol = 1e-12 * std::max(s.rho.max_abs(), 1e-300);
    parity("rho even in x1", s.rho, {E, N});
    parity("omega odd in x1", s.omega, {O, N});
    smooth("rho", s.rho);
    smooth("omega", s.omega);
    add("not identically zero", s.rho.max_abs() > 0.0, fmt::format("max|rho| = {}", s.rho.max_abs()));
    const auto axis = column(s.rho, g.nx / 2);
    const double k0 = *std::min_element(axis.begin(), axis.end());
    add("rho >= k0 > 0 on {0}x[0,pi]", k0 > tol, fmt::format("k0 = {}", k0));
    const auto far = column(s.rho, 0);
    const double hi = *std::max_element(far.begin(), far.end());
    add("rho <= 0 on {pi}x[0,pi]", hi <= tol, fmt::format("max = {:.3g}", hi));
  } else {
    const auto& s = std::get<AxisymState>(state);
    const auto& g = std::get<AnnulusGrid>(s.utheta.grid());
    const double tol = 1e-12 * std::max(s.utheta.max_abs(), 1e-300);
    parity("utheta even in z", s.utheta, {N, E});
    parity("omegatheta odd in z", s.omegatheta, {N, O});
    smooth("utheta", s.utheta);
    smooth("omegatheta", s.omegatheta);
    const auto top = column(s.utheta, 0);
    const double k0 = *std::min_element(top.begin(), top.end());
    add("utheta >= k0 > 0 on z=pi", k0 > tol, fmt::format("k0 = {}", k0));
    double bottom = 0.0;
    for (int r = 0; r < g.nr; ++r) bottom = std::max(bottom, std::abs(s.utheta(r, g.nz / 2)));
    add("|utheta| <= k0/8 on z=0", bottom <= k0 / 8.0 + tol,
        fmt::format("max |utheta(r,0)| = {:.3g}, k0/8 = {:.3g}", bottom, k0 / 8.0));
  }
  return rep;
}

}  // namespace bgl
