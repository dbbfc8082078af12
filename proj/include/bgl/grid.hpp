#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <variant>

namespace bgl {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Storage is row-major: value(row, col) = values[row * cols + col]. The
// contiguous column index always runs along a 2π-periodic axis.
//
//   grid      columns (periodic)   rows
//   torus     x1 in (-π, π]        x2 in (-π, π]  (periodic)
//   strip     x1 in (-π, π]        x2 in [0, π]   (bounded, endpoints included)
//   annulus   z  in (-π, π]        r  in [π, 2π]  (bounded, endpoints included)

/// Doubly periodic (-π, π]² with x_j = -π + j·2π/n.
struct TorusGrid {
  int nx = 0;
  int ny = 0;

  static TorusGrid make(int nx, int ny);

  int rows() const { return ny; }
  int cols() const { return nx; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  double dx() const { return kTwoPi / nx; }
  double dy() const { return kTwoPi / ny; }
  double x1(int col) const { return -kPi + col * dx(); }
  double x2(int row) const { return -kPi + row * dy(); }

  bool operator==(const TorusGrid&) const = default;
};

/// Channel 𝕋 × [0, π]; both walls are grid rows.
struct StripGrid {
  int nx = 0;
  int nz = 0;

  static StripGrid make(int nx, int nz);

  int rows() const { return nz; }
  int cols() const { return nx; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * nz; }
  double dx() const { return kTwoPi / nx; }
  double dz() const { return kPi / (nz - 1); }
  double x1(int col) const { return -kPi + col * dx(); }
  double x2(int row) const { return row * dz(); }

  bool operator==(const StripGrid&) const = default;
};

/// Meridional (r, z) section [π, 2π] × 𝕋 of the annular cylinder.
struct AnnulusGrid {
  int nr = 0;
  int nz = 0;

  static AnnulusGrid make(int nr, int nz);

  int rows() const { return nr; }
  int cols() const { return nz; }
  std::size_t size() const { return static_cast<std::size_t>(nr) * nz; }
  double dr() const { return kPi / (nr - 1); }
  double dz() const { return kTwoPi / nz; }
  double r(int row) const { return kPi + row * dr(); }
  double z(int col) const { return -kPi + col * dz(); }

  bool operator==(const AnnulusGrid&) const = default;
};

using Grid = std::variant<TorusGrid, StripGrid, AnnulusGrid>;

enum class Axis { first, second };

int grid_rows(const Grid& g);
int grid_cols(const Grid& g);
std::size_t grid_size(const Grid& g);
std::string grid_name(const Grid& g);

/// (first, second) coordinates of a storage cell: (x1, x2) on the torus and
/// strip, (r, z) on the annulus.
std::pair<double, double> grid_coords(const Grid& g, int row, int col);

/// True when the axis is periodic (spectral derivatives).
bool axis_is_periodic(const Grid& g, Axis axis);

/// True when the axis runs along storage columns.
bool axis_is_columns(const Grid& g, Axis axis);

}  // namespace bgl
