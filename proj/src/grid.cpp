#include "bgl/grid.hpp"

#include <fmt/format.h>

#include "bgl/error.hpp"

namespace bgl {
namespace {

void require_periodic(int n, const char* what) {
  if (n < 16 || n % 2 != 0) {
    throw ConfigError(fmt::format("{} must be even and >= 16 (got {})", what, n));
  }
}

void require_bounded(int n, const char* what) {
  if (n < 17) throw ConfigError(fmt::format("{} must be >= 17 (got {})", what, n));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

TorusGrid TorusGrid::make(int nx, int ny) {
  require_periodic(nx, "torus nx");
  require_periodic(ny, "torus ny");
  return {nx, ny};
}

StripGrid StripGrid::make(int nx, int nz) {
  require_periodic(nx, "strip nx");
  require_bounded(nz, "strip nz");
  return {nx, nz};
}

AnnulusGrid AnnulusGrid::make(int nr, int nz) {
  require_bounded(nr, "annulus nr");
  require_periodic(nz, "annulus nz");
  return {nr, nz};
}

int grid_rows(const Grid& g) {
  return std::visit([](const auto& x) { return x.rows(); }, g);
}

int grid_cols(const Grid& g) {
  return std::visit([](const auto& x) { return x.cols(); }, g);
}

std::size_t grid_size(const Grid& g) {
  return std::visit([](const auto& x) { return x.size(); }, g);
}

std::string grid_name(const Grid& g) {
  return std::visit(overloaded{
                        [](const TorusGrid&) { return std::string("torus"); },
                        [](const StripGrid&) { return std::string("strip"); },
                        [](const AnnulusGrid&) { return std::string("annulus"); },
                    },
                    g);
}

std::pair<double, double> grid_coords(const Grid& g, int row, int col) {
  return std::visit(
      overloaded{
          [&](const TorusGrid& t) { return std::pair{t.x1(col), t.x2(row)}; },
          [&](const StripGrid& s) { return std::pair{s.x1(col), s.x2(row)}; },
          [&](const AnnulusGrid& a) { return std::pair{a.r(row), a.z(col)}; },
      },
      g);
}

bool axis_is_periodic(const Grid& g, Axis axis) {
  if (std::holds_alternative<TorusGrid>(g)) return true;
  return axis_is_columns(g, axis);
}

bool axis_is_columns(const Grid& g, Axis axis) {
  const bool annulus = std::holds_alternative<AnnulusGrid>(g);
  return annulus ? axis == Axis::second : axis == Axis::first;
}

}  // namespace bgl
