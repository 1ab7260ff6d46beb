#include "rsky/dominance.hpp"

#include <string>

#include "rsky/error.hpp"
#include "rsky/lp.hpp"

namespace rsky {
namespace {

void require_same_arity(std::span<const double> t, std::span<const double> s) {
  if (t.size() != s.size()) {
    throw ArityError("cannot compare tuples of arity " + std::to_string(t.size()) + " and " + std::to_string(s.size()));
  }
}

std::vector<std::span<const double>> value_spans(std::span<const Tuple* const> tuples) {
  std::vector<std::span<const double>> out;
  out.reserve(tuples.size());
  for (const Tuple* t : tuples) out.emplace_back(t->values);
  return out;
}

// Score of every vertex against every blend candidate: scores[v][j] = v . others[j].
std::vector<std::vector<double>> vertex_scores(std::span<const std::span<const double>> others,
                                               const WeightPolytope& polytope) {
  const auto& verts = polytope.vertices();
  std::vector<std::vector<double>> scores(verts.size(), std::vector<double>(others.size()));
  for (std::size_t v = 0; v < verts.size(); ++v) {
    for (std::size_t j = 0; j < others.size(); ++j) scores[v][j] = linear_score(verts[v], others[j]);
  }
  return scores;
}

void check_blend_input(std::span<const double> t, std::span<const std::span<const double>> others,
                       const WeightPolytope& polytope) {
  if (others.empty()) throw ValidationError("convex combination test needs at least one other tuple");
  if (t.size() != polytope.dimension()) throw ArityError("tuple arity differs from weight polytope dimension");
  for (const auto& o : others) require_same_arity(t, o);
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kAuto: return "auto";
    case Method::kLp: return "lp";
    case Method::kVe: return "ve";
    case Method::kDirect: return "direct";
  }
  return "?";
}

bool pareto_dominates(std::span<const double> t, std::span<const double> s) {
  require_same_arity(t, s);
  bool strict = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!approx_le(t[i], s[i])) return false;
    strict = strict || definitely_less(t[i], s[i]);
  }
  return strict;
}

bool pareto_dominates(const Tuple& t, const Tuple& s) { return pareto_dominates(t.values, s.values); }

bool f_dominates_ve(std::span<const double> t, std::span<const double> s, const WeightPolytope& polytope) {
  require_same_arity(t, s);
  if (t.size() != polytope.dimension()) throw ArityError("tuple arity differs from weight polytope dimension");
  bool strict = false;
  for (const auto& v : polytope.vertices()) {
    const double ft = linear_score(v, t);
    const double fs = linear_score(v, s);
    if (!approx_le(ft, fs)) return false;
    strict = strict || definitely_less(ft, fs);
  }
  return strict;
}

bool f_dominates_lp(std::span<const double> t, std::span<const double> s, const WeightPolytope& polytope) {
  require_same_arity(t, s);
  const std::size_t d = polytope.dimension();
  if (t.size() != d) throw ArityError("tuple arity differs from weight polytope dimension");
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = t[i] - s[i];
  // Worst case for t: the weight that favors s the most.
  const lp::Solution worst = lp::solve(polytope.as_lp(), diff);
  if (worst.status != lp::Status::kOptimal) throw Error("F-dominance LP did not reach an optimum");
  if (worst.objective_value > kTolerance) return false;
  for (double& v : diff) v = -v;
  const lp::Solution best = lp::solve(polytope.as_lp(), diff);
  if (best.status != lp::Status::kOptimal) throw Error("F-dominance LP did not reach an optimum");
  return best.objective_value > kTolerance;
}

bool f_dominates(const Tuple& t, const Tuple& s, const FunctionFamily& family, Method method) {
  require_same_arity(t.values, s.values);
  family.check_arity(t.values.size());
  if (method == Method::kAuto) method = family.is_finite() ? Method::kDirect : Method::kVe;
  if (family.is_finite()) {
    if (method != Method::kDirect) {
      throw ConfigError("method '" + std::string(to_string(method)) + "' requires a linear family");
    }
    bool strict = false;
    for (const auto& f : family.members()) {
      const double ft = evaluate(f, t);
      const double fs = evaluate(f, s);
      if (!approx_le(ft, fs)) return false;
      strict = strict || definitely_less(ft, fs);
    }
    return strict;
  }
  switch (method) {
    case Method::kVe: return f_dominates_ve(t.values, s.values, family.polytope());
    case Method::kLp: return f_dominates_lp(t.values, s.values, family.polytope());
    default: throw ConfigError("method 'direct' requires a finite family");
  }
}

bool convex_combo_f_dominates(std::span<const double> t, std::span<const std::span<const double>> others,
                              const WeightPolytope& polytope) {
  check_blend_input(t, others, polytope);
  // Variables: blend weights lambda_j, then one slack delta_v per vertex.
  //   sum_j lambda_j (v . s_j) + delta_v = v . t    for every vertex v
  //   sum_j lambda_j = 1
  // maximize sum_v delta_v.
  const auto& verts = polytope.vertices();
  const std::size_t m = others.size();
  const std::size_t nv = verts.size();
  const auto scores = vertex_scores(others, polytope);

  lp::Problem p;
  p.objective.assign(m + nv, 0.0);
  for (std::size_t v = 0; v < nv; ++v) p.objective[m + v] = 1.0;
  for (std::size_t v = 0; v < nv; ++v) {
    lp::Row row{std::vector<double>(m + nv, 0.0), linear_score(verts[v], t)};
    for (std::size_t j = 0; j < m; ++j) row.coeffs[j] = scores[v][j];
    row.coeffs[m + v] = 1.0;
    p.equalities.push_back(std::move(row));
  }
  lp::Row simplex{std::vector<double>(m + nv, 0.0), 1.0};
  for (std::size_t j = 0; j < m; ++j) simplex.coeffs[j] = 1.0;
  p.equalities.push_back(std::move(simplex));

  const lp::Solution sol = lp::solve(p);
  return sol.status == lp::Status::kOptimal && sol.objective_value > kTolerance;
}

bool convex_combo_f_dominates(const Tuple& t, std::span<const Tuple* const> others, const WeightPolytope& polytope) {
  const auto spans = value_spans(others);
  return convex_combo_f_dominates(t.values, spans, polytope);
}

double blend_margin(std::span<const double> t, std::span<const std::span<const double>> others,
                    const WeightPolytope& polytope) {
  check_blend_input(t, others, polytope);
  // Variables: lambda_j >= 0, then a free margin eta.
  //   eta + sum_j lambda_j (v . s_j) <= v . t    for every vertex v
  //   sum_j lambda_j = 1
  // maximize eta.
  const auto& verts = polytope.vertices();
  const std::size_t m = others.size();
  const auto scores = vertex_scores(others, polytope);

  lp::Problem p;
  p.objective.assign(m + 1, 0.0);
  p.objective[m] = 1.0;
  p.bounds.assign(m + 1, lp::Bound::kNonNegative);
  p.bounds[m] = lp::Bound::kFree;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    lp::Row row{std::vector<double>(m + 1, 0.0), linear_score(verts[v], t)};
    for (std::size_t j = 0; j < m; ++j) row.coeffs[j] = scores[v][j];
    row.coeffs[m] = 1.0;
    p.inequalities.push_back(std::move(row));
  }
  lp::Row simplex{std::vector<double>(m + 1, 1.0), 1.0};
  simplex.coeffs[m] = 0.0;
  p.equalities.push_back(std::move(simplex));

  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::kOptimal) throw Error("blend margin LP did not reach an optimum");
  return sol.objective_value;
}

}  // namespace rsky
