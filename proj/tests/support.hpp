#pragma once

// Test-only helpers: random instance generators and brute-force oracles that
// deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rsky/model.hpp"
#include "rsky/polytope.hpp"

namespace rsky::testing {

inline std::vector<std::vector<double>> random_rows(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  for (auto& row : rows) {
    for (double& v : row) v = u(rng);
  }
  return rows;
}

// Rows on a coarse grid so that ties and duplicates actually occur.
inline std::vector<std::vector<double>> random_grid_rows(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                                         int levels = 5) {
  std::uniform_int_distribution<int> u(0, levels - 1);
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  for (auto& row : rows) {
    for (double& v : row) v = static_cast<double>(u(rng)) / (levels - 1);
  }
  return rows;
}

inline Relation random_relation(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  return Relation::from_canonical(Schema::uniform(d), random_rows(rng, n, d));
}

inline std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t d) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(d);
  double s = 0.0;
  for (double& v : w) s += (v = e(rng));
  for (double& v : w) v /= s;
  return w;
}

// Constraints that all hold at one random simplex point, so W(C) is non-empty.
inline std::vector<LinearConstraint> random_constraints(std::mt19937_64& rng, std::size_t d, std::size_t count) {
  const auto anchor = random_simplex_point(rng, d);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> slack(0.0, 0.15);
  std::bernoulli_distribution flip(0.5);
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < count; ++i) {
    LinearConstraint c;
    c.coeffs.resize(d);
    double at = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      c.coeffs[j] = coef(rng);
      at += c.coeffs[j] * anchor[j];
    }
    if (flip(rng)) {
      c.op = Relop::kLessEqual;
      c.rhs = at + slack(rng);
    } else {
      c.op = Relop::kGreaterEqual;
      c.rhs = at - slack(rng);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Gaussian elimination with full pivoting, independent of the library's.
inline std::optional<std::vector<double>> oracle_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t r = k; r < n; ++r) {
      for (std::size_t c = k; c < n; ++c) {
        if (std::abs(a[r][c]) > std::abs(a[pr][pc])) {
          pr = r;
          pc = c;
        }
      }
    }
    if (std::abs(a[pr][pc]) < 1e-11) return std::nullopt;
    std::swap(a[pr], a[k]);
    std::swap(b[pr], b[k]);
    for (auto& row : a) std::swap(row[pc], row[k]);
    std::swap(perm[pc], perm[k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> y(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * y[c];
    y[i] = s / a[i][i];
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm[i]] = y[i];
  return x;
}

// All vertices of {x : rows x <= rhs} (a bounded polytope in R^n) by trying
// every n-subset of rows as the active set.
inline std::vector<std::vector<double>> oracle_vertices(const std::vector<std::vector<double>>& rows,
                                                        const std::vector<double>& rhs, double tol = 1e-9) {
  const std::size_t m = rows.size();
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  std::vector<std::vector<double>> out;
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(n, m)), true);
  if (n > m) return out;
  do {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask[i]) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
    }
    auto x = oracle_solve(a, b);
    if (!x) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += rows[i][j] * (*x)[j];
      ok = s <= rhs[i] + tol;
    }
    if (ok) out.push_back(*x);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// Vertices of W(C) via the generic oracle: substitute w_d = 1 - sum(others).
inline std::vector<std::vector<double>> oracle_weight_vertices(std::size_t d,
                                                               const std::vector<LinearConstraint>& constraints) {
  if (d == 1) return {{1.0}};
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  auto add = [&](const std::vector<double>& full, double b) {
    // full . w <= b with w_last = 1 - sum(w_0..w_{d-2})
    std::vector<double> reduced(d - 1);
    for (std::size_t j = 0; j + 1 < d; ++j) reduced[j] = full[j] - full[d - 1];
    rows.push_back(reduced);
    rhs.push_back(b - full[d - 1]);
  };
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> e(d, 0.0);
    e[j] = -1.0;
    add(e, 0.0);
  }
  for (const auto& c : constraints) {
    if (c.op == Relop::kLessEqual) {
      add(c.coeffs, c.rhs);
    } else {
      std::vector<double> neg(c.coeffs);
      for (double& v : neg) v = -v;
      add(neg, -c.rhs);
    }
  }
  std::vector<std::vector<double>> out;
  for (auto& x : oracle_vertices(rows, rhs)) {
    double last = 1.0;
    for (double v : x) last -= v;
    x.push_back(last);
    out.push_back(std::move(x));
  }
  return out;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace rsky::testing
