#include "rsky/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rsky/error.hpp"

namespace rsky {

Schema::Schema(std::vector<AttributeSpec> attributes) : attributes_(std::move(attributes)) {
  if (attributes_.empty()) throw ValidationError("schema must have at least one attribute");
  std::set<std::string> seen;
  for (const auto& a : attributes_) {
    if (a.name.empty()) throw ValidationError("attribute name must be nonempty");
    if (!seen.insert(a.name).second) throw ValidationError("duplicate attribute name '" + a.name + "'");
  }
}

Schema Schema::uniform(std::size_t d, Direction direction) {
  std::vector<AttributeSpec> attrs;
  attrs.reserve(d);
  for (std::size_t i = 0; i < d; ++i) attrs.push_back({"a" + std::to_string(i), direction});
  return Schema(std::move(attrs));
}

Relation::Relation(Schema schema) : schema_(std::move(schema)), spans_(schema_.arity(), 1.0) {}

Relation::Relation(Schema schema, std::vector<Tuple> tuples, std::vector<double> spans)
    : schema_(std::move(schema)), tuples_(std::move(tuples)), spans_(std::move(spans)) {
  const std::size_t d = schema_.arity();
  if (spans_.size() != d) throw ArityError("column span count does not match schema arity");
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    const Tuple& t = tuples_[i];
    if (t.id != i) throw ValidationError("tuple id " + std::to_string(t.id) + " at position " + std::to_string(i));
    if (t.values.size() != d || t.raw_values.size() != d) {
      throw ArityError("tuple " + std::to_string(i) + " has arity " + std::to_string(t.values.size()) +
                       ", schema has " + std::to_string(d));
    }
    for (double v : t.values) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("tuple " + std::to_string(i) + " has a negative or non-finite canonical value");
      }
    }
  }
}

Relation Relation::from_canonical(Schema schema, std::vector<std::vector<double>> rows) {
  std::vector<Tuple> tuples;
  tuples.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Tuple t;
    t.id = i;
    t.raw_values = rows[i];
    t.values = std::move(rows[i]);
    tuples.push_back(std::move(t));
  }
  const std::size_t d = schema.arity();
  return Relation(std::move(schema), std::move(tuples), std::vector<double>(d, 1.0));
}

Relation Relation::from_canonical(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw ValidationError("cannot infer arity from zero rows");
  const std::size_t d = rows.front().size();
  return from_canonical(Schema::uniform(d), std::move(rows));
}

std::vector<const Tuple*> Relation::select(std::span<const std::size_t> ids) const {
  std::vector<const Tuple*> out;
  out.reserve(ids.size());
  for (std::size_t id : ids) {
    if (id >= tuples_.size()) throw ValidationError("tuple id " + std::to_string(id) + " out of range");
    out.push_back(&tuples_[id]);
  }
  return out;
}

ScoringFunction::ScoringFunction(std::vector<Term> terms) : terms_(std::move(terms)) {
  bool any_positive = false;
  for (const auto& term : terms_) {
    if (!std::isfinite(term.coefficient) || term.coefficient < 0.0) {
      throw ValidationError("scoring function coefficients must be finite and non-negative");
    }
    if (!std::isfinite(term.exponent) || term.exponent < 1.0) {
      throw ValidationError("scoring function exponents must be finite and at least 1");
    }
    any_positive = any_positive || term.coefficient > 0.0;
  }
  if (!any_positive) throw ValidationError("scoring function needs at least one positive coefficient");
}

ScoringFunction ScoringFunction::linear(std::span<const double> weights) {
  std::vector<Term> terms;
  terms.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) terms.push_back({i, weights[i], 1.0});
  return ScoringFunction(std::move(terms));
}

bool ScoringFunction::is_linear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exponent == 1.0; });
}

std::size_t ScoringFunction::required_arity() const {
  std::size_t n = 0;
  for (const auto& t : terms_) n = std::max(n, t.attr + 1);
  return n;
}

std::vector<double> ScoringFunction::weights(std::size_t d) const {
  if (!is_linear()) throw ValidationError("weights() requires a linear scoring function");
  if (required_arity() > d) throw ArityError("scoring function references attributes beyond arity");
  std::vector<double> w(d, 0.0);
  for (const auto& t : terms_) w[t.attr] += t.coefficient;
  return w;
}

double evaluate(const ScoringFunction& f, std::span<const double> values) {
  double score = 0.0;
  for (const auto& term : f.terms()) {
    if (term.attr >= values.size()) {
      throw ArityError("scoring term references attribute " + std::to_string(term.attr) + " of a " +
                       std::to_string(values.size()) + "-ary tuple");
    }
    const double x = values[term.attr];
    score += term.coefficient * (term.exponent == 1.0 ? x : std::pow(x, term.exponent));
  }
  return score;
}

double evaluate(const ScoringFunction& f, const Tuple& t) { return evaluate(f, std::span<const double>(t.values)); }

double linear_score(std::span<const double> weights, std::span<const double> values) {
  if (weights.size() != values.size()) {
    throw ArityError("weight vector has length " + std::to_string(weights.size()) + ", tuple has arity " +
                     std::to_string(values.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
  return s;
}

double linear_score(std::span<const double> weights, const Tuple& t) {
  return linear_score(weights, std::span<const double>(t.values));
}

}  // namespace rsky
