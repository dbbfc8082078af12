#include "bgl/field.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bgl/error.hpp"
#include "bgl/fft.hpp"

namespace bgl {

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_size(grid_)) {
    throw InputError(fmt::format("field has {} samples, grid expects {}",
                                 values_.size(), grid_size(grid_)));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("field contains non-finite samples");
  }
}

ScalarField ScalarField::zeros(const Grid& grid) {
  return ScalarField(grid, std::vector<double>(grid_size(grid), 0.0));
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid_size(grid), value));
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

ScalarField ScalarField::operator+(const ScalarField& o) const {
  if (!(o.grid_ == grid_)) throw InputError("field grids differ");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
  return ScalarField(grid_, std::move(v));
}

ScalarField ScalarField::operator-(const ScalarField& o) const {
  if (!(o.grid_ == grid_)) throw InputError("field grids differ");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.values_[i];
  return ScalarField(grid_, std::move(v));
}

ScalarField ScalarField::operator*(double a) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= a;
  return ScalarField(grid_, std::move(v));
}

SpectralField transform(const ScalarField& f) {
  SpectralField s{f.grid(), {}};
  s.coef.resize(static_cast<std::size_t>(s.rows()) * s.modes());
  if (std::holds_alternative<TorusGrid>(f.grid())) {
    fft::forward_2d(f.rows(), f.cols(), f.values().data(), s.coef.data());
  } else {
    fft::forward_rows(f.rows(), f.cols(), f.values().data(), s.coef.data());
  }
  return s;
}

ScalarField inverse_transform(const SpectralField& s) {
  std::vector<double> v(grid_size(s.grid));
  const int rows = grid_rows(s.grid);
  const int cols = grid_cols(s.grid);
  if (std::holds_alternative<TorusGrid>(s.grid)) {
    fft::inverse_2d(rows, cols, s.coef.data(), v.data());
  } else {
    fft::inverse_rows(rows, cols, s.coef.data(), v.data());
  }
  return ScalarField(s.grid, std::move(v));
}

}  // namespace bgl
