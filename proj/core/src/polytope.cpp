#include "rsky/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "rsky/error.hpp"

namespace rsky {
namespace {

constexpr double kFeasibilityTolerance = 1e-9;
constexpr double kDedupDistance = 1e-7;

void check_arity(std::size_t d, std::span<const LinearConstraint> constraints) {
  if (d == 0) throw ArityError("weight polytope dimension must be positive");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].coeffs.size() != d) {
      throw ArityError("constraint " + std::to_string(i) + " has " + std::to_string(constraints[i].coeffs.size()) +
                       " coefficients, expected " + std::to_string(d));
    }
  }
}

lp::Row as_upper_row(const LinearConstraint& c) {
  lp::Row row{c.coeffs, c.rhs};
  if (c.op == Relop::kGreaterEqual) {
    for (double& v : row.coeffs) v = -v;
    row.rhs = -row.rhs;
  }
  return row;
}

lp::Problem build_lp(std::size_t d, std::span<const LinearConstraint> constraints) {
  lp::Problem p;
  p.objective.assign(d, 0.0);
  p.equalities.push_back({std::vector<double>(d, 1.0), 1.0});
  for (const auto& c : constraints) p.inequalities.push_back(as_upper_row(c));
  return p;
}

// Solves the square system a x = b by Gaussian elimination with partial
// pivoting; nullopt when (numerically) singular.
std::optional<std::vector<double>> solve_square(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  double norm = 0.0;
  for (double v : a) norm = std::max(norm, std::abs(v));
  const double singular = 1e-12 * std::max(norm, 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) <= singular) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return x;
}

// Every basic solution obtained by making d-1 facets tight alongside
// sum(w) = 1, filtered for feasibility.
std::vector<WeightVector> enumerate_vertices(std::size_t d, const lp::Problem& lp) {
  // Facets as <= rows: user constraints, then -w_i <= 0.
  std::vector<lp::Row> facets = lp.inequalities;
  for (std::size_t i = 0; i < d; ++i) {
    lp::Row row{std::vector<double>(d, 0.0), 0.0};
    row.coeffs[i] = -1.0;
    facets.push_back(std::move(row));
  }
  auto feasible = [&](const WeightVector& w) {
    return lp::max_violation(lp, w) <= kFeasibilityTolerance;
  };

  std::vector<WeightVector> found;
  const std::size_t k = d - 1;
  const std::size_t m = facets.size();
  if (k > m) return found;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    std::vector<double> a(d * d), b(d);
    std::fill(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(d), 1.0);
    b[0] = 1.0;
    for (std::size_t r = 0; r < k; ++r) {
      std::copy(facets[pick[r]].coeffs.begin(), facets[pick[r]].coeffs.end(), a.begin() + static_cast<std::ptrdiff_t>((r + 1) * d));
      b[r + 1] = facets[pick[r]].rhs;
    }
    if (auto w = solve_square(std::move(a), std::move(b))) {
      for (double& v : *w) {
        if (std::abs(v) < 1e-15) v = 0.0;
      }
      if (feasible(*w)) {
        for (double& v : *w) v = std::max(v, 0.0);
        found.push_back(std::move(*w));
      }
    }
    // Next k-combination of m in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::sort(found.begin(), found.end());
  std::vector<WeightVector> unique;
  for (auto& w : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&w](const WeightVector& u) {
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - w[i]) * (u[i] - w[i]);
      return std::sqrt(s) < kDedupDistance;
    });
    if (!dup) unique.push_back(std::move(w));
  }
  return unique;
}

}  // namespace

bool is_empty(std::size_t d, std::span<const LinearConstraint> constraints) {
  check_arity(d, constraints);
  return lp::solve(build_lp(d, constraints)).status == lp::Status::kInfeasible;
}

WeightPolytope::WeightPolytope(std::size_t d, std::vector<LinearConstraint> constraints)
    : d_(d), constraints_(std::move(constraints)) {
  check_arity(d_, constraints_);
  lp_ = build_lp(d_, constraints_);
  if (lp::solve(lp_).status == lp::Status::kInfeasible) {
    throw ValidationError("weight constraints leave no feasible weight vector");
  }
  vertices_ = enumerate_vertices(d_, lp_);
  if (vertices_.empty()) throw Error("vertex enumeration found no vertex of a non-empty weight polytope");
  centroid_.assign(d_, 0.0);
  for (const auto& v : vertices_) {
    for (std::size_t i = 0; i < d_; ++i) centroid_[i] += v[i];
  }
  for (double& c : centroid_) c /= static_cast<double>(vertices_.size());
}

bool WeightPolytope::contains(std::span<const double> w, double tolerance) const {
  if (w.size() != d_) throw ArityError("weight vector has wrong dimension");
  return lp::max_violation(lp_, w) <= tolerance;
}

WeightPolytope WeightPolytope::refined(std::span<const LinearConstraint> extra) const {
  std::vector<LinearConstraint> all = constraints_;
  all.insert(all.end(), extra.begin(), extra.end());
  return WeightPolytope(d_, std::move(all));
}

}  // namespace rsky
