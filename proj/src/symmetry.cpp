#include "bgl/symmetry.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bgl/error.hpp"

namespace bgl {
namespace {

Parity flip(Parity p) {
  switch (p) {
    case Parity::even: return Parity::odd;
    case Parity::odd: return Parity::even;
    default: return Parity::none;
  }
}

Parity times(Parity a, Parity b) {
  if (a == Parity::none || b == Parity::none) return Parity::none;
  return a == b ? Parity::even : Parity::odd;
}

double sign_of(Parity p) { return p == Parity::odd ? -1.0 : 1.0; }

// f <- ½(f + s·Rf) along storage columns (reflect col j -> (n-j) mod n).
void project_cols(std::vector<double>& v, int rows, int cols, double s) {
  std::vector<double> out(v.size());
  for (int r = 0; r < rows; ++r) {
    const double* in = v.data() + static_cast<std::size_t>(r) * cols;
    double* o = out.data() + static_cast<std::size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) o[c] = 0.5 * (in[c] + s * in[(cols - c) % cols]);
  }
  v.swap(out);
}

void project_rows(std::vector<double>& v, int rows, int cols, double s) {
  std::vector<double> out(v.size());
  for (int r = 0; r < rows; ++r) {
    const double* a = v.data() + static_cast<std::size_t>(r) * cols;
    const double* b = v.data() + static_cast<std::size_t>((rows - r) % rows) * cols;
    double* o = out.data() + static_cast<std::size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) o[c] = 0.5 * (a[c] + s * b[c]);
  }
  v.swap(out);
}

}  // namespace

FieldParity differentiate(FieldParity p, Axis axis) {
  if (axis == Axis::first) p.first = flip(p.first);
  else p.second = flip(p.second);
  return p;
}

FieldParity product(FieldParity a, FieldParity b) {
  return {times(a.first, b.first), times(a.second, b.second)};
}

const FieldParity& SymmetryClass::of(const std::string& field) const {
  for (const auto& [n, p] : fields) {
    if (n == field) return p;
  }
  throw InputError(fmt::format("symmetry class {} has no field '{}'", name, field));
}

SymmetryClass torus_class() {
  const auto E = Parity::even, O = Parity::odd;
  return {"torus",
          {{"rho", {E, O}}, {"omega", {O, O}}, {"psi", {O, O}}, {"u1", {O, E}}, {"u2", {E, O}}}};
}

SymmetryClass strip_class() {
  const auto E = Parity::even, O = Parity::odd, N = Parity::none;
  return {"strip",
          {{"rho", {E, N}}, {"omega", {O, N}}, {"psi", {O, N}}, {"u1", {O, N}}, {"u2", {E, N}}}};
}

SymmetryClass axisym_class() {
  const auto E = Parity::even, O = Parity::odd, N = Parity::none;
  return {"axisym",
          {{"gamma", {N, E}}, {"utheta", {N, E}}, {"zeta", {N, O}}, {"omegatheta", {N, O}},
           {"psi", {N, O}}, {"ur", {N, E}}, {"uz", {N, O}}}};
}

bool biot_savart_consistent(const SymmetryClass& cls) {
  const bool axisym = cls.name == "axisym";
  const FieldParity psi = cls.of("psi");
  // u = (∂2ψ, -∂1ψ) on planar grids; (u^r, u^z) ∝ (-∂zψ, ∂rψ) on the annulus
  const FieldParity a = axisym ? cls.of("ur") : cls.of("u1");
  const FieldParity b = axisym ? cls.of("uz") : cls.of("u2");
  if (differentiate(psi, Axis::second) != a || differentiate(psi, Axis::first) != b) return false;
  const FieldParity w = axisym ? cls.of("omegatheta") : cls.of("omega");
  // ω = ∂1u2 - ∂2u1 (planar) or ∂z u^r - ∂r u^z (annulus)
  const FieldParity t1 = axisym ? differentiate(a, Axis::second) : differentiate(b, Axis::first);
  const FieldParity t2 = axisym ? differentiate(b, Axis::first) : differentiate(a, Axis::second);
  return t1 == w && t2 == w;
}

ScalarField symmetry_project(const ScalarField& f, FieldParity p, double* moved) {
  const Grid& g = f.grid();
  std::vector<double> v(f.values().begin(), f.values().end());
  const int rows = f.rows();
  const int cols = f.cols();
  for (Axis axis : {Axis::first, Axis::second}) {
    const Parity par = axis == Axis::first ? p.first : p.second;
    if (par == Parity::none) continue;
    if (!axis_is_periodic(g, axis)) {
      throw DomainError(fmt::format("cannot reflect a bounded axis of the {} grid", grid_name(g)));
    }
    if (axis_is_columns(g, axis)) project_cols(v, rows, cols, sign_of(par));
    else project_rows(v, rows, cols, sign_of(par));
  }
  if (moved) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i] - f.values()[i]));
    *moved = m;
  }
  return ScalarField(g, std::move(v));
}

double parity_defect(const ScalarField& f, FieldParity p) {
  double moved = 0.0;
  symmetry_project(f, p, &moved);
  return moved / std::max(f.max_abs(), 1e-300);
}

}  // namespace bgl
