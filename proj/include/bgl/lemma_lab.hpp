#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bgl/field.hpp"
#include "bgl/state.hpp"

namespace bgl {

inline constexpr double kLemmaSlack = 0.01;

/// One sub-inequality: measured `relation` bound, with 1% relative slack plus
/// `lattice` absolute slack. Unasserted checks are reported only.
struct LemmaCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // ">=", "<=", or "==" (tolerance in `lattice` only)
  double lattice = 0.0;
  bool asserted = true;
  bool pass = true;
  double margin = 0.0;  ///< (measured - bound) / |bound| signed so that >= 0 holds; absolute when bound = 0
};

struct LemmaReport {
  std::string lemma;  // "omega-lp", "smallinx1-a", "smallinx1-b"
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> intermediates;
  std::string case_tag;
  std::vector<LemmaCheck> checks;
  std::vector<std::string> notes;
  bool degenerate = false;

  bool pass() const;
  /// Over asserted inequalities with a nonzero bound; +inf when there are none.
  double min_margin() const;
  std::optional<double> value(std::string_view key) const;
  const LemmaCheck* check(std::string_view name) const;
};

std::string format_report(const LemmaReport& r);
std::string report_csv_header();
std::string report_csv_row(const LemmaReport& r);

/// A planar vector field on Q = [0,π]² with its vorticity, evaluated on
/// tensor grids: out[j * xs.size() + i] is the value at (xs[i], ys[j]).
class QField {
 public:
  virtual ~QField() = default;
  virtual void eval(std::span<const double> xs, std::span<const double> ys, double* u1,
                    double* u2, double* omega) const = 0;
};

/// ψ = Σ a cos(k·x) + b sin(k·x); u = (∂2ψ, -∂1ψ), ω = -Δψ.
struct TrigMode {
  int k1 = 0, k2 = 0;
  double a = 0.0, b = 0.0;
};

class TrigStreamfunction final : public QField {
 public:
  explicit TrigStreamfunction(std::vector<TrigMode> modes) : modes_(std::move(modes)) {}
  /// Random modes with |k| <= kmax, amplitudes decaying like |k|^-q for a
  /// random q, an overall random scale and sign.
  static TrigStreamfunction random(std::uint64_t seed, int kmax = 8);
  const std::vector<TrigMode>& modes() const { return modes_; }
  void eval(std::span<const double> xs, std::span<const double> ys, double* u1, double* u2,
            double* omega) const override;

 private:
  std::vector<TrigMode> modes_;
};

/// Bilinear interpolation of samples on a uniform (n1 × n2) grid covering Q,
/// stored row-major with rows along x2.
class SampledQField final : public QField {
 public:
  SampledQField(int n1, int n2, std::vector<double> u1, std::vector<double> u2,
                std::vector<double> omega);
  /// Restriction of a torus or strip state to Q.
  static SampledQField from_state(const SimState& s);
  void eval(std::span<const double> xs, std::span<const double> ys, double* u1, double* u2,
            double* omega) const override;

 private:
  int n1_, n2_;
  std::vector<double> u1_, u2_, omega_;
};

struct OmegaLpOptions {
  int panels = 6;       ///< 20-point Gauss panels per side of Q
  int sup_grid = 257;   ///< uniform samples per axis for the sup norm
  int scan = 64;        ///< radii scanned before bisection for r0
};

/// Lemma for flows with fixed kinetic energy on Q, with the proof
/// intermediates r0, |Q \ Q_r0| and ∫_{Q \ Q_r0} ω.
LemmaReport check_omega_lp(const QField& u, const std::vector<double>& p_list,
                           const OmegaLpOptions& opt = {});

/// Case split for compactly supported μ, odd in x2, sampled on a torus grid.
/// The continuum transform is sampled on the frequency lattice (ℤ/refine)² by
/// zero-padding; continuum sets become lattice sets with cell-area weights,
/// and the mass of the cells cut by a set boundary is reported and used as
/// lattice slack.
LemmaReport check_smallinx1_a(const ScalarField& mu, const std::vector<double>& s_list,
                              int refine = 4);

/// The g(x1,1) chain for admissible μ on the torus (odd in x2, even in x1,
/// μ(0,·) = 0, μ >= 0 on 𝕋×[0,π]).
LemmaReport check_smallinx1_b(const ScalarField& mu, const std::vector<double>& s_list);

/// Admissible inputs for the suites.
ScalarField random_compact_mu(std::uint64_t seed, int n);
ScalarField random_admissible_mu(std::uint64_t seed, int n);

/// ∫_D sin(x2)^{-1/2} dx over D = [0,π]², by tanh-sinh quadrature.
double sin_power_integral();

struct SuiteOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  int threads = 0;  ///< 0: hardware concurrency
  int resolution = 256;
  int refine = 4;  ///< frequency-lattice refinement for part (a)
  std::vector<double> exponents;  ///< p-list or s-list; empty for the default
};

/// Sample i uses seed + i. Reports come back in sample order whatever the
/// thread count.
std::vector<LemmaReport> run_omega_lp_suite(const SuiteOptions& opt);
std::vector<LemmaReport> run_smallinx1_a_suite(const SuiteOptions& opt);
std::vector<LemmaReport> run_smallinx1_b_suite(const SuiteOptions& opt);

struct SuiteSummary {
  int samples = 0;
  int passed = 0;
  int degenerate = 0;
  double min_margin = 0.0;
  std::uint64_t worst_seed = 0;
  std::vector<std::string> violations;  ///< "seed:check" for every failed asserted check
};

SuiteSummary summarize(const std::vector<LemmaReport>& reports);

}  // namespace bgl
