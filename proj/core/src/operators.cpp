#include "rsky/operators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "rsky/dominance.hpp"
#include "rsky/error.hpp"
#include "rsky/lp.hpp"

namespace rsky {
namespace {

using Clock = std::chrono::steady_clock;
using Ids = std::vector<std::size_t>;

enum class Outcome { kNeither, kFirst, kSecond };  // which side dominates

// Block-nested loops over `order`. A newcomer dominated by a window member is
// dropped; otherwise it evicts every window member it dominates and joins.
Ids window_filter(const Ids& order, const std::function<Outcome(std::size_t, std::size_t)>& compare) {
  Ids window;
  for (std::size_t x : order) {
    bool dominated = false;
    std::size_t keep = 0;
    for (std::size_t i = 0; i < window.size(); ++i) {
      const Outcome o = compare(window[i], x);
      if (o == Outcome::kFirst) {
        dominated = true;
        // Anything x already evicted was dominated by x, so dropping it stays
        // correct even though x itself is discarded.
        std::copy(window.begin() + static_cast<std::ptrdiff_t>(i), window.end(),
                  window.begin() + static_cast<std::ptrdiff_t>(keep));
        keep += window.size() - i;
        break;
      }
      if (o != Outcome::kSecond) window[keep++] = window[i];
    }
    window.resize(keep);
    if (!dominated) window.push_back(x);
  }
  std::sort(window.begin(), window.end());
  return window;
}

Outcome compare_pareto(std::span<const double> a, std::span<const double> b) {
  bool a_better = false;
  bool b_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (definitely_less(a[i], b[i])) {
      a_better = true;
    } else if (definitely_less(b[i], a[i])) {
      b_better = true;
    }
    if (a_better && b_better) return Outcome::kNeither;
  }
  if (a_better) return Outcome::kFirst;
  if (b_better) return Outcome::kSecond;
  return Outcome::kNeither;
}

// Decides both directions of linear-family F-dominance with two LPs:
// max w.(a-b) and max w.(b-a) over the polytope.
Outcome compare_lp(std::span<const double> a, std::span<const double> b, const WeightPolytope& polytope) {
  const std::size_t d = a.size();
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = a[i] - b[i];
  const lp::Solution up = lp::solve(polytope.as_lp(), diff);
  for (double& v : diff) v = -v;
  const lp::Solution down = lp::solve(polytope.as_lp(), diff);
  if (up.status != lp::Status::kOptimal || down.status != lp::Status::kOptimal) {
    throw Error("F-dominance LP did not reach an optimum");
  }
  const bool a_worse_somewhere = up.objective_value > kTolerance;
  const bool b_worse_somewhere = down.objective_value > kTolerance;
  if (!a_worse_somewhere && b_worse_somewhere) return Outcome::kFirst;
  if (!b_worse_somewhere && a_worse_somewhere) return Outcome::kSecond;
  return Outcome::kNeither;
}

// Each tuple mapped to the vector of its scores under a finite set of
// functions: the family members, or the vertex weights of a polytope.
// F-dominance then reduces to Pareto dominance between images.
std::vector<std::vector<double>> score_images(const Relation& r, const FunctionFamily& family) {
  std::vector<std::vector<double>> images(r.size());
  for (const Tuple& t : r.tuples()) {
    auto& img = images[t.id];
    if (family.is_finite()) {
      for (const auto& f : family.members()) img.push_back(evaluate(f, t));
    } else {
      for (const auto& v : family.polytope().vertices()) img.push_back(linear_score(v, t));
    }
  }
  return images;
}

Ids all_ids(const Relation& r) {
  Ids ids(r.size());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

Ids sky_ids(const Relation& r) {
  return window_filter(all_ids(r), [&r](std::size_t a, std::size_t b) {
    return compare_pareto(r[a].values, r[b].values);
  });
}

std::vector<double> topo_keys(const Relation& r, const FunctionFamily& family) {
  std::vector<double> keys(r.size(), 0.0);
  for (const Tuple& t : r.tuples()) {
    if (family.is_linear()) {
      keys[t.id] = linear_score(family.polytope().centroid(), t);
    } else {
      for (const auto& f : family.members()) keys[t.id] += evaluate(f, t);
    }
  }
  return keys;
}

void sort_topologically(Ids& ids, const Relation& r, const std::vector<double>& keys) {
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    if (r[a].values != r[b].values) return r[a].values < r[b].values;
    return a < b;
  });
}

Ids nd_ids(const Relation& r, const FunctionFamily& family, NdAlgorithm alg) {
  Ids order = is_two_phase(alg) ? sky_ids(r) : all_ids(r);
  if (is_sorted_variant(alg)) sort_topologically(order, r, topo_keys(r, family));

  if (family.is_finite() || uses_vertex_enumeration(alg)) {
    const auto images = score_images(r, family);
    return window_filter(order, [&images](std::size_t a, std::size_t b) {
      return compare_pareto(images[a], images[b]);
    });
  }
  const WeightPolytope& polytope = family.polytope();
  return window_filter(order, [&r, &polytope](std::size_t a, std::size_t b) {
    return compare_lp(r[a].values, r[b].values, polytope);
  });
}

// Largest delta such that some w in the polytope scores t at least delta
// below every competitor.
double optimality_margin(const Tuple& t, const std::vector<const Tuple*>& competitors,
                         const WeightPolytope& polytope) {
  const std::size_t d = polytope.dimension();
  lp::Problem p = polytope.as_lp();
  for (auto& row : p.equalities) row.coeffs.push_back(0.0);
  for (auto& row : p.inequalities) row.coeffs.push_back(0.0);
  p.objective.assign(d + 1, 0.0);
  p.objective[d] = 1.0;
  p.bounds.assign(d + 1, lp::Bound::kNonNegative);
  p.bounds[d] = lp::Bound::kFree;
  for (const Tuple* s : competitors) {
    // delta - w.(s - t) <= 0
    lp::Row row{std::vector<double>(d + 1, 0.0), 0.0};
    for (std::size_t i = 0; i < d; ++i) row.coeffs[i] = t.values[i] - s->values[i];
    row.coeffs[d] = 1.0;
    p.inequalities.push_back(std::move(row));
  }
  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::kOptimal) throw Error("PO margin LP did not reach an optimum");
  return sol.objective_value;
}

void check_linear_input(const Relation& r, const WeightPolytope& polytope) {
  if (polytope.dimension() != r.arity()) {
    throw ArityError("weight polytope has dimension " + std::to_string(polytope.dimension()) +
                     ", relation has arity " + std::to_string(r.arity()));
  }
}

QueryResult finish(OperatorKind op, Ids ids, Clock::time_point start) {
  QueryResult q;
  q.op = op;
  q.ids = std::move(ids);
  q.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return q;
}

}  // namespace

std::string_view to_string(OperatorKind op) {
  switch (op) {
    case OperatorKind::kSky: return "SKY";
    case OperatorKind::kNd: return "ND";
    case OperatorKind::kPo: return "PO";
    case OperatorKind::kTopK: return "TOPK";
  }
  return "?";
}

std::string_view to_string(NdAlgorithm alg) {
  switch (alg) {
    case NdAlgorithm::kSve1: return "sve1";
    case NdAlgorithm::kSve2: return "sve2";
    case NdAlgorithm::kUlp1: return "ulp1";
    case NdAlgorithm::kUlp2: return "ulp2";
  }
  return "?";
}

std::string_view to_string(PoMethod method) { return method == PoMethod::kDirect ? "direct" : "pond"; }

std::optional<NdAlgorithm> parse_nd_algorithm(std::string_view name) {
  for (auto a : {NdAlgorithm::kSve1, NdAlgorithm::kSve2, NdAlgorithm::kUlp1, NdAlgorithm::kUlp2}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::optional<PoMethod> parse_po_method(std::string_view name) {
  if (name == "direct") return PoMethod::kDirect;
  if (name == "pond") return PoMethod::kPond;
  return std::nullopt;
}

QueryResult sky(const Relation& r) {
  const auto start = Clock::now();
  return finish(OperatorKind::kSky, sky_ids(r), start);
}

std::vector<std::size_t> topo_sort(const Relation& r, const FunctionFamily& family) {
  family.check_arity(r.arity());
  Ids ids = all_ids(r);
  sort_topologically(ids, r, topo_keys(r, family));
  return ids;
}

QueryResult nd(const Relation& r, const FunctionFamily& family, NdAlgorithm alg) {
  family.check_arity(r.arity());
  const auto start = Clock::now();
  QueryResult q = finish(OperatorKind::kNd, nd_ids(r, family, alg), start);
  if (family.is_finite()) {
    q.notes.push_back("finite family: " + std::string(to_string(alg)) +
                      " ran with direct evaluation in place of " + (uses_vertex_enumeration(alg) ? "VE" : "LP"));
  }
  return q;
}

QueryResult po_direct(const Relation& r, const WeightPolytope& polytope) {
  check_linear_input(r, polytope);
  const auto start = Clock::now();
  const Ids candidates = nd_ids(r, FunctionFamily::linear(polytope), NdAlgorithm::kSve1);
  if (candidates.size() <= 1) return finish(OperatorKind::kPo, candidates, start);

  Ids out;
  std::vector<const Tuple*> competitors;
  for (std::size_t t : candidates) {
    competitors.clear();
    for (std::size_t s : candidates) {
      if (s != t) competitors.push_back(&r[s]);
    }
    if (optimality_margin(r[t], competitors, polytope) > kTolerance) out.push_back(t);
  }
  return finish(OperatorKind::kPo, std::move(out), start);
}

QueryResult po_pond(const Relation& r, const WeightPolytope& polytope) {
  check_linear_input(r, polytope);
  const auto start = Clock::now();
  const FunctionFamily family = FunctionFamily::linear(polytope);
  Ids candidates = nd_ids(r, family, NdAlgorithm::kSve1);
  sort_topologically(candidates, r, topo_keys(r, family));

  auto values_of = [&r](const Ids& ids, std::size_t skip) {
    std::vector<std::span<const double>> out;
    for (std::size_t id : ids) {
      if (id != skip) out.emplace_back(r[id].values);
    }
    return out;
  };

  // Rounds blending the first m candidates (the likeliest dominators),
  // doubling m, visiting likely-dominated tuples (the tail) first. A strict
  // blend dominance is a safe removal: it never changes whether any other
  // candidate is potentially optimal.
  for (std::size_t m = 2; candidates.size() >= 2 && m <= candidates.size() - 1; m *= 2) {
    const Ids snapshot = candidates;
    for (auto it = snapshot.rbegin(); it != snapshot.rend(); ++it) {
      const std::size_t t = *it;
      Ids pool;
      for (std::size_t id : candidates) {
        if (pool.size() == m) break;
        if (id != t) pool.push_back(id);
      }
      if (pool.empty()) continue;
      if (convex_combo_f_dominates(r[t].values, values_of(pool, t), polytope)) {
        candidates.erase(std::find(candidates.begin(), candidates.end(), t));
      }
    }
  }

  // Exact pass against all remaining candidates. Zero-slack blends (ties,
  // duplicates, collinear interior points) are caught here; nothing is
  // removed until every survivor has been judged.
  Ids out;
  if (candidates.size() <= 1) {
    out = candidates;
  } else {
    for (std::size_t t : candidates) {
      if (blend_margin(r[t].values, values_of(candidates, t), polytope) < -kTolerance) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return finish(OperatorKind::kPo, std::move(out), start);
}

QueryResult po(const Relation& r, const FunctionFamily& family, PoMethod method) {
  family.check_arity(r.arity());
  if (family.is_linear()) {
    return method == PoMethod::kDirect ? po_direct(r, family.polytope()) : po_pond(r, family.polytope());
  }
  const auto start = Clock::now();
  Ids out;
  for (const auto& f : family.members()) {
    if (r.empty()) break;
    std::size_t best = 0;
    double best_score = evaluate(f, r[0]);
    for (std::size_t i = 1; i < r.size(); ++i) {
      const double s = evaluate(f, r[i]);
      if (s < best_score) {
        best = i;
        best_score = s;
      }
    }
    bool unique = true;
    for (std::size_t i = 0; i < r.size() && unique; ++i) {
      if (i != best && !definitely_less(best_score, evaluate(f, r[i]))) unique = false;
    }
    if (unique) out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  QueryResult q = finish(OperatorKind::kPo, std::move(out), start);
  q.notes.push_back("finite family: PO computed from the definition, method '" + std::string(to_string(method)) +
                    "' not applicable");
  return q;
}

}  // namespace rsky
