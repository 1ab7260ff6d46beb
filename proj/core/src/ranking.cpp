#include "rsky/ranking.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "rsky/error.hpp"

namespace rsky {
namespace {

void require_k(std::size_t k) {
  if (k == 0) throw ValidationError("k must be at least 1");
}

std::size_t overlap(std::span<const std::size_t> s, const std::vector<std::size_t>& top) {
  const std::set<std::size_t> unique(s.begin(), s.end());
  return static_cast<std::size_t>(
      std::count_if(top.begin(), top.end(), [&unique](std::size_t id) { return unique.count(id) > 0; }));
}

}  // namespace

QueryResult topk(const Relation& r, const ScoringFunction& f, std::size_t k) {
  require_k(k);
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> scores(r.size());
  for (const Tuple& t : r.tuples()) scores[t.id] = evaluate(f, t);

  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
    return scores[a] != scores[b] ? scores[a] < scores[b] : a < b;
  });
  // Runs of scores that chain within tolerance are one tie group, ordered by id.
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && !definitely_less(scores[order[hi - 1]], scores[order[hi]])) ++hi;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
    lo = hi;
  }
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());

  QueryResult q;
  q.op = OperatorKind::kTopK;
  for (std::size_t id : order) q.scores.push_back(scores[id]);
  q.ids = std::move(order);
  q.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return q;
}

double precision(std::span<const std::size_t> s, const Relation& r, const ScoringFunction& f, std::size_t k) {
  require_k(k);
  const auto top = topk(r, f, k).ids;
  return static_cast<double>(overlap(s, top)) / static_cast<double>(k);
}

double recall(std::span<const std::size_t> s, const Relation& r, const ScoringFunction& f, std::size_t k) {
  require_k(k);
  if (s.empty()) throw ValidationError("recall is undefined for an empty set");
  const std::set<std::size_t> unique(s.begin(), s.end());
  const auto top = topk(r, f, k).ids;
  return static_cast<double>(overlap(s, top)) / static_cast<double>(unique.size());
}

ScoringFunction centroid_function(const WeightPolytope& polytope) {
  return ScoringFunction::linear(polytope.centroid());
}

ScoringFunction function_from_raw_weights(const Relation& r, std::span<const double> raw_weights) {
  if (raw_weights.size() != r.arity()) {
    throw ArityError("got " + std::to_string(raw_weights.size()) + " weights for " + std::to_string(r.arity()) +
                     " attributes");
  }
  std::vector<double> w(r.arity());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(raw_weights[i]) || raw_weights[i] < 0.0) {
      throw ValidationError("weights must be finite and non-negative");
    }
    w[i] = raw_weights[i] * r.spans()[i];
  }
  if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) {
    throw ValidationError("weights select only constant columns");
  }
  return ScoringFunction::linear(w);
}

}  // namespace rsky
