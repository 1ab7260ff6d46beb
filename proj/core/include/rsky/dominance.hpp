#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "rsky/family.hpp"
#include "rsky/model.hpp"
#include "rsky/polytope.hpp"

namespace rsky {

// How an F-dominance test is decided.
//   kDirect: evaluate every member of a finite family.
//   kVe:     compare scores at every vertex of W(C).
//   kLp:     two linear programs over W(C).
//   kAuto:   kDirect for finite families, kVe for linear ones.
enum class Method { kAuto, kLp, kVe, kDirect };

std::string_view to_string(Method m);

// Classical dominance in canonical (lower-is-better) space: t is no worse
// anywhere and strictly better somewhere, both up to kTolerance.
bool pareto_dominates(std::span<const double> t, std::span<const double> s);
bool pareto_dominates(const Tuple& t, const Tuple& s);

// t F-dominates s: every f in F scores t no higher than s, and at least one
// scores it strictly lower. Throws ConfigError when `method` does not fit the
// family and ArityError on mismatched arities.
bool f_dominates(const Tuple& t, const Tuple& s, const FunctionFamily& family, Method method = Method::kAuto);

// Linear-family back ends on raw canonical vectors.
bool f_dominates_ve(std::span<const double> t, std::span<const double> s, const WeightPolytope& polytope);
bool f_dominates_lp(std::span<const double> t, std::span<const double> s, const WeightPolytope& polytope);

// Is t F-dominated (with strict slack at one vertex at least) by some convex
// combination of `others`? Throws ValidationError when `others` is empty.
bool convex_combo_f_dominates(const Tuple& t, std::span<const Tuple* const> others, const WeightPolytope& polytope);
bool convex_combo_f_dominates(std::span<const double> t, std::span<const std::span<const double>> others,
                              const WeightPolytope& polytope);

// max over blends c of `others` of min over vertices v of v.(t - c).
// Non-negative (up to tolerance) iff some blend is at least as good as t
// under every function of the family, which is exactly when t is not the
// strict optimum of any function. Throws ValidationError on empty `others`.
double blend_margin(std::span<const double> t, std::span<const std::span<const double>> others,
                    const WeightPolytope& polytope);

}  // namespace rsky
