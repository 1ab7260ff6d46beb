#include <gtest/gtest.h>

#include <random>

#include "rsky/error.hpp"
#include "rsky/model.hpp"
#include "support.hpp"

namespace rsky {
namespace {

ScoringFunction x2_plus_y() { return ScoringFunction({{0, 1.0, 2.0}, {1, 1.0, 1.0}}); }
ScoringFunction x_plus_y2() { return ScoringFunction({{0, 1.0, 1.0}, {1, 1.0, 2.0}}); }

TEST(EvaluateTest, WorkedExampleScores) {
  const std::vector<double> t{1, 5};
  const std::vector<double> k{2, 4};
  EXPECT_DOUBLE_EQ(evaluate(x2_plus_y(), t), 6.0);
  EXPECT_DOUBLE_EQ(evaluate(x2_plus_y(), k), 8.0);
  EXPECT_DOUBLE_EQ(evaluate(x_plus_y2(), t), 26.0);
  EXPECT_DOUBLE_EQ(evaluate(x_plus_y2(), k), 18.0);
}

TEST(EvaluateTest, ZeroTupleScoresZero) {
  EXPECT_EQ(evaluate(x2_plus_y(), std::vector<double>{0, 0}), 0.0);
  EXPECT_EQ(evaluate(x_plus_y2(), std::vector<double>{0, 0}), 0.0);
}

TEST(EvaluateTest, AttributeOutOfRangeIsArityError) {
  const ScoringFunction f({{3, 1.0, 1.0}});
  EXPECT_THROW(evaluate(f, std::vector<double>{1, 2}), ArityError);
}

TEST(ScoringFunctionTest, RejectsNonMonotoneTerms) {
  EXPECT_THROW(ScoringFunction({{0, -1.0, 1.0}}), ValidationError);
  EXPECT_THROW(ScoringFunction({{0, 1.0, 0.5}}), ValidationError);
  EXPECT_THROW(ScoringFunction({{0, 0.0, 1.0}}), ValidationError);
  EXPECT_THROW(ScoringFunction(std::vector<Term>{}), ValidationError);
}

TEST(ScoringFunctionTest, LinearPredicate) {
  EXPECT_FALSE(x2_plus_y().is_linear());
  const std::vector<double> w{0.6, 0.4};
  EXPECT_TRUE(ScoringFunction::linear(w).is_linear());
  EXPECT_EQ(ScoringFunction::linear(w).weights(2), w);
}

TEST(LinearScoreTest, Examples) {
  EXPECT_DOUBLE_EQ(linear_score(std::vector<double>{1, 0}, std::vector<double>{1, 5}), 1.0);
  EXPECT_NEAR(linear_score(std::vector<double>{0.6, 0.4}, std::vector<double>{2, 4}), 2.8, 1e-12);
  EXPECT_DOUBLE_EQ(linear_score(std::vector<double>{0.5, 0.5}, std::vector<double>{0.3, 0.3}), 0.3);
  EXPECT_THROW(linear_score(std::vector<double>{1.0}, std::vector<double>{1, 2}), ArityError);
}

TEST(ScoringFunctionTest, MonotoneOnRandomPairs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> coef(0.0, 3.0);
  std::uniform_real_distribution<double> expo(1.0, 4.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 1 + trial % 5;
    std::vector<Term> terms;
    for (std::size_t i = 0; i < d; ++i) terms.push_back({i, coef(rng) + 1e-3, expo(rng)});
    const ScoringFunction f(terms);
    std::vector<double> a(d), b(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = u(rng);
      b[i] = a[i] + u(rng) * (1.0 - a[i]);
    }
    EXPECT_LE(evaluate(f, a), evaluate(f, b));
  }
}

TEST(ScoringFunctionTest, LinearEvaluateMatchesDotProduct) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + trial % 6;
    const auto w = testing::random_simplex_point(rng, d);
    const auto rows = testing::random_rows(rng, 1, d);
    EXPECT_NEAR(evaluate(ScoringFunction::linear(w), rows[0]), linear_score(w, rows[0]), 1e-15);
  }
}

TEST(SchemaTest, Invariants) {
  EXPECT_THROW(Schema(std::vector<AttributeSpec>{}), ValidationError);
  EXPECT_THROW(Schema({{"a", Direction::kMinimize}, {"a", Direction::kMaximize}}), ValidationError);
  EXPECT_THROW(Schema({{"", Direction::kMinimize}}), ValidationError);
  EXPECT_EQ(Schema::uniform(3).arity(), 3u);
}

TEST(RelationTest, Invariants) {
  const auto r = Relation::from_canonical({{1, 5}, {2, 4}});
  EXPECT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1].id, 1u);
  EXPECT_THROW(Relation::from_canonical({{1, 5}, {2}}), ArityError);
  EXPECT_THROW(Relation::from_canonical({{1, -5}}), ValidationError);
}

}  // namespace
}  // namespace rsky
