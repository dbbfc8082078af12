#include "bgl/operators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bgl/error.hpp"
#include "bgl/fft.hpp"

namespace bgl {
namespace {

using cplx = std::complex<double>;

const TorusGrid& require_torus(const Grid& g, const char* op) {
  if (const auto* t = std::get_if<TorusGrid>(&g)) return *t;
  throw DomainError(fmt::format("{} is only defined on the torus (got {})", op,
                                grid_name(g)));
}

// Half-complex multiplicity of column mode k.
double mode_weight(int k, int cols) { return (k == 0 || 2 * k == cols) ? 1.0 : 2.0; }

template <class Mult>
ScalarField apply_torus_multiplier(const ScalarField& f, Mult&& mult) {
  const auto& g = std::get<TorusGrid>(f.grid());
  SpectralField s = transform(f);
  for (int r = 0; r < g.ny; ++r) {
    const int k2 = wavenumber(r, g.ny);
    for (int k1 = 0; k1 < s.modes(); ++k1) s(r, k1) *= mult(k1, k2);
  }
  return inverse_transform(s);
}

}  // namespace

namespace detail {

void fd4_rows(const double* in, double* out, int rows, int cols, double h) {
  const double c = 1.0 / (12.0 * h);
  auto at = [&](int r, int col) { return in[static_cast<std::size_t>(r) * cols + col]; };
  const int n = rows;
  for (int col = 0; col < cols; ++col) {
    auto put = [&](int r, double v) { out[static_cast<std::size_t>(r) * cols + col] = v; };
    put(0, c * (-25 * at(0, col) + 48 * at(1, col) - 36 * at(2, col) + 16 * at(3, col) -
                3 * at(4, col)));
    put(1, c * (-3 * at(0, col) - 10 * at(1, col) + 18 * at(2, col) - 6 * at(3, col) +
                at(4, col)));
    for (int r = 2; r < n - 2; ++r) {
      put(r, c * (at(r - 2, col) - 8 * at(r - 1, col) + 8 * at(r + 1, col) - at(r + 2, col)));
    }
    put(n - 2, -c * (-3 * at(n - 1, col) - 10 * at(n - 2, col) + 18 * at(n - 3, col) -
                     6 * at(n - 4, col) + at(n - 5, col)));
    put(n - 1, -c * (-25 * at(n - 1, col) + 48 * at(n - 2, col) - 36 * at(n - 3, col) +
                     16 * at(n - 4, col) - 3 * at(n - 5, col)));
  }
}

namespace {

// One-sided WENO5 derivative from the five divided differences v[0..4].
inline double weno5(double v1, double v2, double v3, double v4, double v5) {
  constexpr double eps = 1e-6;
  const double p1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
  const double p2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
  const double p3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;
  const double a = v1 - 2.0 * v2 + v3, b = v2 - 2.0 * v3 + v4, c = v3 - 2.0 * v4 + v5;
  const double s1 = 13.0 / 12.0 * a * a + 0.25 * (v1 - 4.0 * v2 + 3.0 * v3) * (v1 - 4.0 * v2 + 3.0 * v3);
  const double s2 = 13.0 / 12.0 * b * b + 0.25 * (v2 - v4) * (v2 - v4);
  const double s3 = 13.0 / 12.0 * c * c + 0.25 * (3.0 * v3 - 4.0 * v4 + v5) * (3.0 * v3 - 4.0 * v4 + v5);
  const double a1 = 0.1 / ((eps + s1) * (eps + s1));
  const double a2 = 0.6 / ((eps + s2) * (eps + s2));
  const double a3 = 0.3 / ((eps + s3) * (eps + s3));
  return (a1 * p1 + a2 * p2 + a3 * p3) / (a1 + a2 + a3);
}

// Upwinded vel·∂f along a 1D line of n samples with stride.
void weno5_line(const double* f, const double* vel, double* out, int n, std::size_t stride,
                double h, bool periodic, std::vector<double>& ext) {
  ext.resize(static_cast<std::size_t>(n) + 6);
  for (int j = -3; j < n + 3; ++j) {
    int m = j;
    if (periodic) {
      m = ((j % n) + n) % n;
    } else if (j < 0) {
      m = -j;
    } else if (j > n - 1) {
      m = 2 * (n - 1) - j;
    }
    ext[static_cast<std::size_t>(j + 3)] = f[static_cast<std::size_t>(m) * stride];
  }
  const double ih = 1.0 / h;
  auto d = [&](int j) { return (ext[j + 4] - ext[j + 3]) * ih; };  // (f_{j+1} - f_j) / h
  for (int j = 0; j < n; ++j) {
    const double v = vel[static_cast<std::size_t>(j) * stride];
    if (v == 0.0) continue;
    const double fx = v > 0.0 ? weno5(d(j - 3), d(j - 2), d(j - 1), d(j), d(j + 1))
                              : weno5(d(j + 2), d(j + 1), d(j), d(j - 1), d(j - 2));
    out[static_cast<std::size_t>(j) * stride] += v * fx;
  }
}

}  // namespace

void weno5_advect(const double* f, const double* vel, double* out, int rows, int cols,
                  double h, bool along_cols, bool periodic) {
  std::vector<double> ext;
  if (along_cols) {
    for (int r = 0; r < rows; ++r) {
      const std::size_t o = static_cast<std::size_t>(r) * cols;
      weno5_line(f + o, vel + o, out + o, cols, 1, h, periodic, ext);
    }
  } else {
    for (int c = 0; c < cols; ++c) {
      weno5_line(f + c, vel + c, out + c, rows, static_cast<std::size_t>(cols), h, periodic, ext);
    }
  }
}

void spectral_cols_derivative(const double* in, double* out, int rows, int cols, int kmax) {
  const int modes = cols / 2 + 1;
  std::vector<cplx> s(static_cast<std::size_t>(rows) * modes);
  fft::forward_rows(rows, cols, in, s.data());
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < modes; ++k) {
      cplx& c = s[static_cast<std::size_t>(r) * modes + k];
      if (2 * k == cols || (kmax >= 0 && k > kmax)) {
        c = 0.0;
      } else {
        c *= cplx(0.0, k);
      }
    }
  }
  fft::inverse_rows(rows, cols, s.data(), out);
}

void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, cplx* rhs, int n) {
  std::vector<double> c(n);
  double beta = diag[0];
  rhs[0] /= beta;
  for (int i = 1; i < n; ++i) {
    c[i] = upper[i - 1] / beta;
    beta = diag[i] - lower[i] * c[i];
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
  }
  for (int i = n - 2; i >= 0; --i) rhs[i] -= c[i + 1] * rhs[i + 1];
}

void truncate_cols(std::vector<double>& v, int rows, int cols, int kmax) {
  const int modes = cols / 2 + 1;
  std::vector<cplx> s(static_cast<std::size_t>(rows) * modes);
  fft::forward_rows(rows, cols, v.data(), s.data());
  for (int r = 0; r < rows; ++r) {
    for (int k = kmax + 1; k < modes; ++k) s[static_cast<std::size_t>(r) * modes + k] = 0.0;
  }
  fft::inverse_rows(rows, cols, s.data(), v.data());
}

std::vector<double> trapezoid(int n, double h) {
  std::vector<double> w(n, h);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace detail

ScalarField derivative(const ScalarField& f, Axis axis) {
  const Grid& g = f.grid();
  if (const auto* t = std::get_if<TorusGrid>(&g)) {
    const bool along_x1 = axis == Axis::first;
    return apply_torus_multiplier(f, [&](int k1, int k2) {
      const int k = along_x1 ? k1 : k2;
      const int n = along_x1 ? t->nx : t->ny;
      return 2 * std::abs(k) == n ? cplx(0.0) : cplx(0.0, k);
    });
  }
  std::vector<double> out(f.size());
  if (axis_is_columns(g, axis)) {
    detail::spectral_cols_derivative(f.values().data(), out.data(), f.rows(), f.cols());
  } else {
    const double h = std::holds_alternative<StripGrid>(g) ? std::get<StripGrid>(g).dz()
                                                          : std::get<AnnulusGrid>(g).dr();
    detail::fd4_rows(f.values().data(), out.data(), f.rows(), f.cols(), h);
  }
  return ScalarField(g, std::move(out));
}

ScalarField laplacian_torus(const ScalarField& f) {
  require_torus(f.grid(), "laplacian_torus");
  return apply_torus_multiplier(
      f, [](int k1, int k2) { return cplx(-static_cast<double>(k1 * k1 + k2 * k2)); });
}

ScalarField inverse_laplacian_torus(const ScalarField& f) {
  require_torus(f.grid(), "inverse_laplacian_torus");
  return apply_torus_multiplier(f, [](int k1, int k2) {
    const int kk = k1 * k1 + k2 * k2;
    return kk == 0 ? cplx(0.0) : cplx(1.0 / kk);
  });
}

VelocityField biot_savart_torus(const ScalarField& omega) {
  const auto& g = require_torus(omega.grid(), "biot_savart_torus");
  const SpectralField w = transform(omega);
  SpectralField u1 = w;
  SpectralField u2 = w;
  for (int r = 0; r < g.ny; ++r) {
    const int k2 = wavenumber(r, g.ny);
    for (int k1 = 0; k1 < w.modes(); ++k1) {
      const int kk = k1 * k1 + k2 * k2;
      const cplx psi = kk == 0 ? cplx(0.0) : w(r, k1) / static_cast<double>(kk);
      const double d1 = 2 * k1 == g.nx ? 0.0 : k1;
      const double d2 = 2 * std::abs(k2) == g.ny ? 0.0 : k2;
      u1(r, k1) = cplx(0.0, d2) * psi;
      u2(r, k1) = -cplx(0.0, d1) * psi;
    }
  }
  return {inverse_transform(u1), inverse_transform(u2)};
}

ScalarField curl(const VelocityField& u) {
  if (std::holds_alternative<AnnulusGrid>(u.first.grid())) {
    throw DomainError("curl is defined for planar grids only");
  }
  return derivative(u.second, Axis::first) - derivative(u.first, Axis::second);
}

ScalarField divergence(const VelocityField& u) {
  const Grid& g = u.first.grid();
  if (const auto* a = std::get_if<AnnulusGrid>(&g)) {
    // (1/r) ∂r(r u^r) + ∂z u^z
    std::vector<double> ru(u.first.values().begin(), u.first.values().end());
    for (int r = 0; r < a->nr; ++r) {
      for (int c = 0; c < a->nz; ++c) ru[static_cast<std::size_t>(r) * a->nz + c] *= a->r(r);
    }
    std::vector<double> d(ru.size());
    detail::fd4_rows(ru.data(), d.data(), a->nr, a->nz, a->dr());
    for (int r = 0; r < a->nr; ++r) {
      for (int c = 0; c < a->nz; ++c) d[static_cast<std::size_t>(r) * a->nz + c] /= a->r(r);
    }
    return ScalarField(g, std::move(d)) + derivative(u.second, Axis::second);
  }
  return derivative(u.first, Axis::first) + derivative(u.second, Axis::second);
}

double sobolev_norm(const ScalarField& f, double s) {
  const auto& g = require_torus(f.grid(), "sobolev_norm");
  if (!(s >= -2.0 && s <= 6.0)) {
    throw InputError(fmt::format("Sobolev index {} outside [-2, 6]", s));
  }
  const SpectralField c = transform(f);
  double sum = 0.0;
  for (int r = 0; r < g.ny; ++r) {
    const int k2 = wavenumber(r, g.ny);
    for (int k1 = 0; k1 < c.modes(); ++k1) {
      const double kk = static_cast<double>(k1 * k1 + k2 * k2);
      if (kk == 0.0) continue;
      sum += mode_weight(k1, g.nx) * std::pow(kk, s) * std::norm(c(r, k1));
    }
  }
  return kTwoPi * std::sqrt(sum);
}

double delta_functional(const ScalarField& rho) {
  const auto& g = require_torus(rho.grid(), "delta_functional");
  const SpectralField c = transform(rho);
  double sum = 0.0;
  for (int r = 0; r < g.ny; ++r) {
    const int k2 = wavenumber(r, g.ny);
    for (int k1 = 1; k1 < c.modes(); ++k1) {
      const double kk = static_cast<double>(k1 * k1 + k2 * k2);
      sum += mode_weight(k1, g.nx) * (k1 * k1 / kk) * std::norm(c(r, k1));
    }
  }
  return kTwoPi * kTwoPi * sum;
}

double lp_norm(const ScalarField& f, double p) {
  if (!(p >= 1.0)) throw DomainError(fmt::format("L^p norm needs p >= 1 (got {})", p));
  if (std::isinf(p)) return f.max_abs();
  const auto w = quadrature_weights(f.grid());
  const auto v = f.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * std::pow(std::abs(v[i]), p);
  return std::pow(sum, 1.0 / p);
}

double grad_sup(const ScalarField& f) {
  const ScalarField a = derivative(f, Axis::first);
  const ScalarField b = derivative(f, Axis::second);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    m = std::max(m, std::hypot(a.values()[i], b.values()[i]));
  }
  return m;
}

std::vector<double> quadrature_weights(const Grid& g) {
  const int rows = grid_rows(g);
  const int cols = grid_cols(g);
  std::vector<double> row_w;
  double col_w = kTwoPi / cols;
  if (const auto* t = std::get_if<TorusGrid>(&g)) {
    row_w.assign(rows, t->dy());
  } else if (const auto* s = std::get_if<StripGrid>(&g)) {
    row_w = detail::trapezoid(rows, s->dz());
  } else {
    row_w = detail::trapezoid(rows, std::get<AnnulusGrid>(g).dr());
  }
  std::vector<double> w(grid_size(g));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) w[static_cast<std::size_t>(r) * cols + c] = row_w[r] * col_w;
  }
  return w;
}

double integrate(const ScalarField& f) {
  const auto w = quadrature_weights(f.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values()[i];
  return s;
}

double spectral_l2_squared(const SpectralField& s) {
  const int rows = s.rows();
  const int cols = grid_cols(s.grid);
  if (std::holds_alternative<TorusGrid>(s.grid)) {
    double sum = 0.0;
    for (int r = 0; r < rows; ++r) {
      for (int k = 0; k < s.modes(); ++k) sum += mode_weight(k, cols) * std::norm(s(r, k));
    }
    return kTwoPi * kTwoPi * sum;
  }
  const double h = std::holds_alternative<StripGrid>(s.grid) ? std::get<StripGrid>(s.grid).dz()
                                                             : std::get<AnnulusGrid>(s.grid).dr();
  const auto row_w = detail::trapezoid(rows, h);
  double sum = 0.0;
  for (int r = 0; r < rows; ++r) {
    double row = 0.0;
    for (int k = 0; k < s.modes(); ++k) row += mode_weight(k, cols) * std::norm(s(r, k));
    sum += row_w[r] * kTwoPi * row;
  }
  return sum;
}

}  // namespace bgl
