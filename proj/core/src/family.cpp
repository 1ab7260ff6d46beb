#include "rsky/family.hpp"

#include <string>

#include "rsky/error.hpp"

namespace rsky {

FunctionFamily FunctionFamily::finite(std::vector<ScoringFunction> members) {
  if (members.empty()) throw ValidationError("a finite function family needs at least one member");
  return FunctionFamily(Finite{std::move(members)});
}

FunctionFamily FunctionFamily::linear(WeightPolytope polytope) { return FunctionFamily(std::move(polytope)); }

void FunctionFamily::check_arity(std::size_t d) const {
  if (is_linear()) {
    if (polytope().dimension() != d) {
      throw ArityError("weight polytope has dimension " + std::to_string(polytope().dimension()) +
                       ", relation has arity " + std::to_string(d));
    }
    return;
  }
  for (const auto& f : members()) {
    if (f.required_arity() > d) {
      throw ArityError("family member reads attribute " + std::to_string(f.required_arity() - 1) + " of a " +
                       std::to_string(d) + "-ary relation");
    }
  }
}

}  // namespace rsky
