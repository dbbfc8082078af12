#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bgl/grid.hpp"

namespace bgl {

/// Real samples of a function on one of the three grids. Immutable after
/// construction; every sample is finite.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);

  static ScalarField zeros(const Grid& grid);
  static ScalarField constant(const Grid& grid, double value);

  /// Samples f(first, second) at every grid point.
  template <class F>
  static ScalarField sample(const Grid& grid, F&& f) {
    const int rows = grid_rows(grid);
    const int cols = grid_cols(grid);
    std::vector<double> v(grid_size(grid));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const auto [a, b] = grid_coords(grid, r, c);
        v[static_cast<std::size_t>(r) * cols + c] = f(a, b);
      }
    }
    return ScalarField(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  int rows() const { return grid_rows(grid_); }
  int cols() const { return grid_cols(grid_); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator()(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * cols() + col];
  }
  double max_abs() const;
  double mean() const;  ///< plain sample average

  ScalarField operator+(const ScalarField& o) const;
  ScalarField operator-(const ScalarField& o) const;
  ScalarField operator*(double a) const;
  ScalarField operator-() const { return *this * -1.0; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

inline ScalarField operator*(double a, const ScalarField& f) { return f * a; }

/// (u1, u2) on the torus or strip; (u^r, u^z) on the annulus.
struct VelocityField {
  ScalarField first;
  ScalarField second;
};

/// Fourier coefficients along the periodic axes. Layout rows × (cols/2 + 1),
/// half-complex in the column wavenumber. Torus fields are transformed along
/// both axes (rows hold k2 = 0..ny/2, -ny/2+1..-1); strip and annulus fields
/// along the columns only, one spectrum per grid row. Coefficients are
/// normalised by the number of transformed samples so that c_k approximates
/// the mean of f·e^{-ik·x}.
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> coef;

  int rows() const { return grid_rows(grid); }
  int modes() const { return grid_cols(grid) / 2 + 1; }
  std::complex<double>& operator()(int row, int k) {
    return coef[static_cast<std::size_t>(row) * modes() + k];
  }
  const std::complex<double>& operator()(int row, int k) const {
    return coef[static_cast<std::size_t>(row) * modes() + k];
  }
};

SpectralField transform(const ScalarField& f);
ScalarField inverse_transform(const SpectralField& s);

/// Signed wavenumber of storage index i along an axis of n samples.
inline int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace bgl
