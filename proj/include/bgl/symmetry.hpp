#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bgl/field.hpp"

namespace bgl {

enum class Parity { none, even, odd };

/// Parity along the first and second coordinate of the grid ((x1, x2) or
/// (r, z)). Only periodic axes may carry a parity.
struct FieldParity {
  Parity first = Parity::none;
  Parity second = Parity::none;
  bool operator==(const FieldParity&) const = default;
};

/// Parity of ∂f along `axis` given the parity of f.
FieldParity differentiate(FieldParity p, Axis axis);
FieldParity product(FieldParity a, FieldParity b);

struct SymmetryClass {
  std::string name;
  std::vector<std::pair<std::string, FieldParity>> fields;

  const FieldParity& of(const std::string& field) const;
};

/// ρ even/odd, ω odd/odd, ψ odd/odd, u1 odd/even, u2 even/odd on 𝕋².
SymmetryClass torus_class();
/// ρ even in x1, ω and ψ odd in x1 on the strip.
SymmetryClass strip_class();
/// Γ = ru^θ and u^θ even in z, ζ, ω^θ and ψ odd in z on the annulus.
SymmetryClass axisym_class();

/// True when ω's parity equals that of ∂1u2 - ∂2u1 and ψ's parity produces
/// the stated velocity through u = ∇⊥ψ (up to sign).
bool biot_savart_consistent(const SymmetryClass& cls);

/// Average of f with its signed reflections x -> -x along each axis that has
/// a parity. Exactly idempotent. `moved` receives max |P f - f|.
ScalarField symmetry_project(const ScalarField& f, FieldParity p, double* moved = nullptr);

/// max |P f - f| / max(max|f|, tiny).
double parity_defect(const ScalarField& f, FieldParity p);

}  // namespace bgl
