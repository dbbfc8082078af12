#include "bgl/state.hpp"

#include <fmt/format.h>

#include "bgl/error.hpp"

namespace bgl {

std::string model_tag(Model m) {
  switch (m) {
    case Model::torus_viscous: return "torus-viscous";
    case Model::torus_inviscid: return "torus-inviscid";
    case Model::strip_inviscid: return "strip-inviscid";
    case Model::axisym_euler: return "axisym-euler";
  }
  return "";
}

Model model_from_tag(std::string_view tag) {
  for (Model m : {Model::torus_viscous, Model::torus_inviscid, Model::strip_inviscid,
                  Model::axisym_euler}) {
    if (model_tag(m) == tag) return m;
  }
  throw InputError(fmt::format("unknown model tag '{}'", tag));
}

double state_time(const SimState& s) {
  return std::visit([](const auto& x) { return x.t; }, s);
}

const Grid& state_grid(const SimState& s) {
  if (const auto* t = std::get_if<TorusState>(&s)) return t->rho.grid();
  if (const auto* t = std::get_if<StripState>(&s)) return t->rho.grid();
  return std::get<AxisymState>(s).utheta.grid();
}

}  // namespace bgl
