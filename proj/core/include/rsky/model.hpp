#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rsky {

// Absolute tolerance shared by every score comparison and LP decision in the
// library. Two scores closer than this are treated as equal.
inline constexpr double kTolerance = 1e-9;

inline bool approx_le(double a, double b) { return a <= b + kTolerance; }
inline bool definitely_less(double a, double b) { return a < b - kTolerance; }

enum class Direction { kMinimize, kMaximize };

struct AttributeSpec {
  std::string name;
  Direction direction = Direction::kMinimize;
};

class Schema {
 public:
  // Throws ValidationError on an empty list, an empty name, or a duplicate name.
  explicit Schema(std::vector<AttributeSpec> attributes);

  // d anonymous attributes "a0".."a{d-1}" sharing one direction.
  static Schema uniform(std::size_t d, Direction direction = Direction::kMinimize);

  std::size_t arity() const { return attributes_.size(); }
  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  const AttributeSpec& operator[](std::size_t i) const { return attributes_[i]; }

  bool operator==(const Schema&) const = default;

 private:
  std::vector<AttributeSpec> attributes_;
};

// One record. `values` are canonical: non-negative and lower-is-better.
// `raw_values` are the numbers as ingested.
struct Tuple {
  std::size_t id = 0;
  std::vector<double> values;
  std::vector<double> raw_values;
};

// An immutable instance of a schema. Tuple ids equal their ingestion
// position, which every operator uses as the final tie-breaker.
class Relation {
 public:
  explicit Relation(Schema schema);

  // `spans[i]` is the number of raw units covered by one canonical unit on
  // column i (max - min after min-max normalization, 1 for identity data,
  // 0 for constant columns).
  Relation(Schema schema, std::vector<Tuple> tuples, std::vector<double> spans);

  // Rows already expressed in canonical space; raw values mirror them.
  static Relation from_canonical(Schema schema, std::vector<std::vector<double>> rows);
  static Relation from_canonical(std::vector<std::vector<double>> rows);

  const Schema& schema() const { return schema_; }
  std::size_t arity() const { return schema_.arity(); }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  std::span<const Tuple> tuples() const { return tuples_; }
  const Tuple& operator[](std::size_t id) const { return tuples_[id]; }
  const std::vector<double>& spans() const { return spans_; }

  // The sub-relation made of `ids`, with tuples keeping their original ids.
  // Only used as operator input; ids no longer match positions.
  std::vector<const Tuple*> select(std::span<const std::size_t> ids) const;

 private:
  Schema schema_;
  std::vector<Tuple> tuples_;
  std::vector<double> spans_;
};

struct Term {
  std::size_t attr = 0;
  double coefficient = 0.0;
  double exponent = 1.0;
};

// f(x) = sum of coefficient * x[attr]^exponent with coefficient >= 0 and
// exponent >= 1, hence monotone on the non-negative orthant.
class ScoringFunction {
 public:
  // Throws ValidationError when a coefficient is negative or non-finite, an
  // exponent is below 1 or non-finite, or no coefficient is positive.
  explicit ScoringFunction(std::vector<Term> terms);

  static ScoringFunction linear(std::span<const double> weights);

  bool is_linear() const;
  // Smallest tuple arity this function can be evaluated on.
  std::size_t required_arity() const;
  // Coefficient vector of a linear function over d attributes.
  std::vector<double> weights(std::size_t d) const;
  std::span<const Term> terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

double evaluate(const ScoringFunction& f, std::span<const double> values);
double evaluate(const ScoringFunction& f, const Tuple& t);

double linear_score(std::span<const double> weights, std::span<const double> values);
double linear_score(std::span<const double> weights, const Tuple& t);

}  // namespace rsky
