#include <gtest/gtest.h>

#include <random>

#include "rsky/dominance.hpp"
#include "rsky/error.hpp"
#include "support.hpp"

namespace rsky {
namespace {

Tuple tup(std::vector<double> v) { return Tuple{0, v, v}; }

FunctionFamily family_f() {
  return FunctionFamily::finite({ScoringFunction({{0, 1, 2}, {1, 1, 1}}), ScoringFunction({{0, 1, 1}, {1, 1, 1}})});
}

FunctionFamily family_m() {
  return FunctionFamily::finite({ScoringFunction({{0, 1, 2}, {1, 1, 1}}), ScoringFunction({{0, 1, 1}, {1, 1, 1}}),
                                 ScoringFunction({{0, 1, 1}, {1, 1, 2}})});
}

FunctionFamily linear(std::size_t d, std::vector<LinearConstraint> c = {}) {
  return FunctionFamily::linear(WeightPolytope(d, std::move(c)));
}

TEST(ParetoTest, Examples) {
  // BMW (300, 30) vs Hyundai (250, 25), both maximize: flip to lower-is-better.
  EXPECT_TRUE(pareto_dominates(std::vector<double>{-300, -30}, std::vector<double>{-250, -25}));
  EXPECT_FALSE(pareto_dominates(tup({1, 5}), tup({1, 5})));
  EXPECT_FALSE(pareto_dominates(tup({1, 5}), tup({2, 4})));
  EXPECT_FALSE(pareto_dominates(tup({2, 4}), tup({1, 5})));
  EXPECT_THROW(pareto_dominates(tup({1}), tup({1, 2})), ArityError);
}

TEST(FDominanceTest, WorkedExampleFiniteFamilies) {
  EXPECT_TRUE(f_dominates(tup({1, 5}), tup({2, 4}), family_f()));
  EXPECT_FALSE(f_dominates(tup({1, 5}), tup({2, 4}), family_m()));
  EXPECT_FALSE(f_dominates(tup({2, 4}), tup({1, 5}), family_m()));
}

TEST(FDominanceTest, LinearFamilyExamples) {
  for (Method m : {Method::kLp, Method::kVe}) {
    EXPECT_FALSE(f_dominates(tup({1, 5}), tup({2, 4}), linear(2), m));
    EXPECT_TRUE(f_dominates(tup({1, 5}), tup({2, 4}), linear(2, {{{1, 0}, Relop::kGreaterEqual, 0.8}}), m));
  }
}

TEST(FDominanceTest, MethodFamilyMismatch) {
  EXPECT_THROW(f_dominates(tup({1, 5}), tup({2, 4}), family_f(), Method::kLp), ConfigError);
  EXPECT_THROW(f_dominates(tup({1, 5}), tup({2, 4}), family_f(), Method::kVe), ConfigError);
  EXPECT_THROW(f_dominates(tup({1, 5}), tup({2, 4}), linear(2), Method::kDirect), ConfigError);
  EXPECT_THROW(f_dominates(tup({1, 5, 1}), tup({2, 4, 1}), linear(2)), ArityError);
}

TEST(FDominanceTest, TiedScoresDoNotDominate) {
  // Same score under every member: no strict inequality anywhere.
  const auto f = FunctionFamily::finite({ScoringFunction({{0, 1, 1}, {1, 1, 1}})});
  EXPECT_FALSE(f_dominates(tup({1, 5}), tup({2, 4}), f));
  EXPECT_FALSE(f_dominates(tup({2, 4}), tup({1, 5}), f));
}

TEST(ConvexComboTest, Examples) {
  const WeightPolytope simplex(2);
  const Tuple a = tup({1, 5}), b = tup({2, 4}), c = tup({4, 1});
  const std::vector<const Tuple*> ac{&a, &c};
  const std::vector<const Tuple*> bc{&b, &c};
  EXPECT_TRUE(convex_combo_f_dominates(b, ac, simplex));
  EXPECT_FALSE(convex_combo_f_dominates(a, bc, simplex));
  const Tuple a2 = tup({1, 5});
  const std::vector<const Tuple*> dup{&a2};
  EXPECT_FALSE(convex_combo_f_dominates(a, dup, simplex));
  EXPECT_THROW(convex_combo_f_dominates(a, std::vector<const Tuple*>{}, simplex), ValidationError);
}

TEST(ConvexComboTest, BlendMarginSigns) {
  const WeightPolytope simplex(2);
  const std::vector<double> a{1, 5}, b{2, 4}, c{4, 1};
  // b is beaten by the 0.7/0.3 blend; a is the strict best at w = (1, 0).
  const std::vector<std::span<const double>> ac{a, c};
  const std::vector<std::span<const double>> bc{b, c};
  EXPECT_GT(blend_margin(b, ac, simplex), kTolerance);
  EXPECT_LT(blend_margin(a, bc, simplex), -kTolerance);
  const std::vector<std::span<const double>> same{a};
  EXPECT_NEAR(blend_margin(a, same, simplex), 0.0, 1e-12);
}

class DominancePropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{77};
};

TEST_F(DominancePropertyTest, IrreflexiveAsymmetricTransitive) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const auto fam = linear(d, testing::random_constraints(rng_, d, static_cast<std::size_t>(trial % 4)));
    const auto rows = testing::random_grid_rows(rng_, 3, d, 4);
    const Tuple t = tup(rows[0]), s = tup(rows[1]), u = tup(rows[2]);
    for (Method m : {Method::kLp, Method::kVe}) {
      EXPECT_FALSE(f_dominates(t, t, fam, m));
      const bool ts = f_dominates(t, s, fam, m);
      if (ts) EXPECT_FALSE(f_dominates(s, t, fam, m));
      if (ts && f_dominates(s, u, fam, m)) EXPECT_TRUE(f_dominates(t, u, fam, m));
    }
  }
}

TEST_F(DominancePropertyTest, BackEndsAgree) {
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const auto fam = linear(d, testing::random_constraints(rng_, d, static_cast<std::size_t>(trial % 6)));
    const auto rows = trial % 2 ? testing::random_rows(rng_, 2, d) : testing::random_grid_rows(rng_, 2, d, 3);
    const Tuple t = tup(rows[0]), s = tup(rows[1]);
    ASSERT_EQ(f_dominates(t, s, fam, Method::kLp), f_dominates(t, s, fam, Method::kVe)) << "trial " << trial;
  }
}

TEST_F(DominancePropertyTest, ParetoImpliesFDominance) {
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const auto fam = linear(d, testing::random_constraints(rng_, d, 3));
    const auto rows = testing::random_grid_rows(rng_, 2, d, 3);
    const Tuple t = tup(rows[0]), s = tup(rows[1]);
    if (pareto_dominates(t, s)) {
      EXPECT_TRUE(f_dominates(t, s, fam, Method::kLp));
      EXPECT_TRUE(f_dominates(t, s, fam, Method::kVe));
      if (d == 2) {
        EXPECT_TRUE(f_dominates(t, s, family_m()));
      }
    }
  }
}

TEST_F(DominancePropertyTest, FullSimplexEqualsPareto) {
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 5;
    const auto rows = testing::random_grid_rows(rng_, 2, d, 3);
    const Tuple t = tup(rows[0]), s = tup(rows[1]);
    EXPECT_EQ(f_dominates(t, s, linear(d)), pareto_dominates(t, s));
  }
}

TEST_F(DominancePropertyTest, SingleTupleBlendIsFDominance) {
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const WeightPolytope p(d, testing::random_constraints(rng_, d, 2));
    const auto rows = testing::random_rows(rng_, 2, d);
    const Tuple t = tup(rows[0]), s = tup(rows[1]);
    const std::vector<const Tuple*> one{&s};
    EXPECT_EQ(convex_combo_f_dominates(t, one, p), f_dominates(s, t, FunctionFamily::linear(p)));
  }
}

}  // namespace
}  // namespace rsky
