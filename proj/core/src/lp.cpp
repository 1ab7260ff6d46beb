#include "rsky/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rsky/error.hpp"

namespace rsky::lp {
namespace {

constexpr double kEps = kPivotTolerance;

// Dense tableau in canonical form: each row is B^-1 [A | b]; `cost` holds the
// reduced costs of the current phase objective (maximization).
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), cost_(cols, 0.0), basis_(rows, 0), alive_(rows, true) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return a_[r * (cols_ + 1) + cols_]; }
  double rhs(std::size_t r) const { return a_[r * (cols_ + 1) + cols_]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<double>& cost() { return cost_; }
  double& value() { return value_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<bool>& alive() { return alive_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    double* prow = &a_[pr * (cols_ + 1)];
    for (std::size_t c = 0; c <= cols_; ++c) prow[c] /= p;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || !alive_[r]) continue;
      double* row = &a_[r * (cols_ + 1)];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    const double f = cost_[pc];
    if (f != 0.0) {
      for (std::size_t c = 0; c < cols_; ++c) cost_[c] -= f * prow[c];
      value_ += f * prow[cols_];
      cost_[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Runs Bland's rule over columns [0, active_cols). Returns false when the
  // objective is unbounded.
  bool optimize(std::size_t active_cols) {
    for (;;) {
      std::size_t enter = active_cols;
      for (std::size_t c = 0; c < active_cols; ++c) {
        if (cost_[c] > kEps) {
          enter = c;
          break;
        }
      }
      if (enter == active_cols) return true;

      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!alive_[r] || at(r, enter) <= kEps) continue;
        best = std::min(best, std::max(rhs(r), 0.0) / at(r, enter));
      }
      // Bland: among minimum-ratio rows, the smallest basic column leaves.
      std::size_t leave = rows_;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!alive_[r] || at(r, enter) <= kEps) continue;
        if (std::max(rhs(r), 0.0) / at(r, enter) > best + kEps) continue;
        if (leave == rows_ || basis_[r] < basis_[leave]) leave = r;
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<double> cost_;
  double value_ = 0.0;  // objective value of the current basic solution
  std::vector<std::size_t> basis_;
  std::vector<bool> alive_;
};

void check_shape(const Problem& p, std::span<const double> objective) {
  const std::size_t n = objective.size();
  if (n == 0) throw ArityError("LP needs at least one variable");
  if (!p.bounds.empty() && p.bounds.size() != n) {
    throw ArityError("LP bounds vector has length " + std::to_string(p.bounds.size()) + ", expected " +
                     std::to_string(n));
  }
  auto check_rows = [n](const std::vector<Row>& rows, const char* kind) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].coeffs.size() != n) {
        throw ArityError(std::string("LP ") + kind + " row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].coeffs.size()) + " coefficients, expected " + std::to_string(n));
      }
    }
  };
  check_rows(p.equalities, "equality");
  check_rows(p.inequalities, "inequality");
}

}  // namespace

Solution solve(const Problem& problem) { return solve(problem, problem.objective); }

Solution solve(const Problem& problem, std::span<const double> objective) {
  check_shape(problem, objective);
  const std::size_t n = objective.size();

  // Column layout: structural columns (free variables split into +/- pairs),
  // then one slack per inequality, then artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = structural++;
    if (!problem.bounds.empty() && problem.bounds[j] == Bound::kFree) neg_col[j] = structural++;
  }
  const std::size_t n_eq = problem.equalities.size();
  const std::size_t n_in = problem.inequalities.size();
  const std::size_t m = n_eq + n_in;
  const std::size_t slack0 = structural;

  // Rows with a non-negative rhs inequality start with their slack basic;
  // every other row needs an artificial.
  std::size_t n_art = n_eq;
  for (const auto& row : problem.inequalities) n_art += row.rhs < 0.0 ? 1 : 0;
  const std::size_t art0 = slack0 + n_in;
  const std::size_t cols = art0 + n_art;

  Tableau t(m, cols);
  std::size_t next_art = art0;
  auto load = [&](std::size_t r, const Row& row, std::size_t slack_col) {
    const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(r, pos_col[j]) = sign * row.coeffs[j];
      if (neg_col[j] != SIZE_MAX) t.at(r, neg_col[j]) = -sign * row.coeffs[j];
    }
    if (slack_col != SIZE_MAX) t.at(r, slack_col) = sign;
    t.rhs(r) = sign * row.rhs;
    if (slack_col != SIZE_MAX && sign > 0.0) {
      t.basis()[r] = slack_col;
    } else {
      t.at(r, next_art) = 1.0;
      t.basis()[r] = next_art++;
    }
  };
  for (std::size_t i = 0; i < n_eq; ++i) load(i, problem.equalities[i], SIZE_MAX);
  for (std::size_t i = 0; i < n_in; ++i) load(n_eq + i, problem.inequalities[i], slack0 + i);

  double scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) scale = std::max(scale, std::abs(t.rhs(r)));

  // Phase 1: maximize -sum(artificials).
  if (n_art > 0) {
    auto& cost = t.cost();
    double value = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < art0) continue;
      for (std::size_t c = 0; c < art0; ++c) cost[c] += t.at(r, c);
      value -= t.rhs(r);
    }
    t.value() = value;
    t.optimize(cols);
    if (t.value() < -kEps * scale) return {Status::kInfeasible, {}, 0.0};

    // Drive remaining (zero-valued) artificials out of the basis; rows that
    // cannot pivot onto a real column are redundant.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < art0) continue;
      std::size_t best = art0;
      double best_abs = kEps;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(t.at(r, c)) > best_abs) {
          best_abs = std::abs(t.at(r, c));
          best = c;
        }
      }
      if (best < art0) {
        t.pivot(r, best);
      } else {
        t.alive()[r] = false;
      }
    }
  }

  // Phase 2 over structural and slack columns only.
  auto& cost = t.cost();
  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -objective[j];
  }
  double value = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (!t.alive()[r]) continue;
    const std::size_t b = t.basis()[r];
    const double cb = b < art0 ? cost[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c < cols; ++c) cost[c] -= cb * t.at(r, c);
    value += cb * t.rhs(r);
  }
  t.value() = value;
  if (!t.optimize(art0)) return {Status::kUnbounded, {}, 0.0};

  std::vector<double> column_value(cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.alive()[r]) column_value[t.basis()[r]] = std::max(t.rhs(r), 0.0);
  }
  Solution sol;
  sol.status = Status::kOptimal;
  sol.x.resize(n);
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double v = column_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) v -= column_value[neg_col[j]];
    sol.x[j] = v;
    obj += objective[j] * v;
  }
  sol.objective_value = obj;
  return sol;
}

double max_violation(const Problem& problem, std::span<const double> x) {
  check_shape(problem, problem.objective);
  if (x.size() != problem.num_vars()) throw ArityError("point has wrong dimension for LP");
  auto dot = [&x](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
  };
  double worst = 0.0;
  for (const auto& row : problem.equalities) worst = std::max(worst, std::abs(dot(row.coeffs) - row.rhs));
  for (const auto& row : problem.inequalities) worst = std::max(worst, dot(row.coeffs) - row.rhs);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const bool free = !problem.bounds.empty() && problem.bounds[j] == Bound::kFree;
    if (!free) worst = std::max(worst, -x[j]);
  }
  return worst;
}

}  // namespace rsky::lp
