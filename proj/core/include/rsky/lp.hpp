#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rsky::lp {

// coeffs . x  (= or <=)  rhs, depending on which list the row sits in.
struct Row {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

enum class Bound { kNonNegative, kFree };

// maximize objective . x
// subject to equalities, inequalities (<=), and per-variable bounds.
// `bounds` may be left empty, meaning every variable is non-negative.
struct Problem {
  std::vector<double> objective;
  std::vector<Row> equalities;
  std::vector<Row> inequalities;
  std::vector<Bound> bounds;

  std::size_t num_vars() const { return objective.size(); }
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;          // set when optimal
  double objective_value = 0.0;   // set when optimal
};

// Pivoting and feasibility tolerance.
inline constexpr double kPivotTolerance = 1e-9;

// Two-phase dense simplex with Bland's rule. Throws ArityError when a row or
// the bounds vector does not match the objective's length.
Solution solve(const Problem& problem);

// Same as solve(problem) but with `objective` replacing problem.objective,
// so one constraint set can be reused across many objectives without copying.
Solution solve(const Problem& problem, std::span<const double> objective);

// Largest violation of any constraint or bound at x (0 when feasible).
double max_violation(const Problem& problem, std::span<const double> x);

}  // namespace rsky::lp
