#pragma once

#include <variant>
#include <vector>

#include "rsky/model.hpp"
#include "rsky/polytope.hpp"

namespace rsky {

// The set F of scoring functions an F-dominance test quantifies over:
// either an explicit list, or every linear function whose weights lie in a
// weight polytope.
class FunctionFamily {
 public:
  // Throws ValidationError when `members` is empty.
  static FunctionFamily finite(std::vector<ScoringFunction> members);
  static FunctionFamily linear(WeightPolytope polytope);

  bool is_finite() const { return std::holds_alternative<Finite>(variant_); }
  bool is_linear() const { return !is_finite(); }

  // Precondition: is_finite().
  const std::vector<ScoringFunction>& members() const { return std::get<Finite>(variant_).members; }
  // Precondition: is_linear().
  const WeightPolytope& polytope() const { return std::get<WeightPolytope>(variant_); }

  // Throws ArityError when some member reads past attribute d-1 or the
  // polytope dimension differs from d.
  void check_arity(std::size_t d) const;

 private:
  struct Finite {
    std::vector<ScoringFunction> members;
  };
  explicit FunctionFamily(std::variant<Finite, WeightPolytope> v) : variant_(std::move(v)) {}

  std::variant<Finite, WeightPolytope> variant_;
};

}  // namespace rsky
