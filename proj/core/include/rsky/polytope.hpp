#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsky/lp.hpp"

namespace rsky {

enum class Relop { kLessEqual, kGreaterEqual };

// coeffs . w  (<= | >=)  rhs, over a weight vector w.
struct LinearConstraint {
  std::vector<double> coeffs;
  Relop op = Relop::kLessEqual;
  double rhs = 0.0;
};

using WeightVector = std::vector<double>;

// True when {w >= 0, sum(w) = 1} intersected with `constraints` has no point.
// Throws ArityError when a constraint's length differs from d.
bool is_empty(std::size_t d, std::span<const LinearConstraint> constraints);

// W(C): the standard weight simplex cut by user constraints C. Always
// non-empty and bounded; vertices are enumerated once at construction.
class WeightPolytope {
 public:
  // Throws ArityError on a length mismatch and ValidationError when empty.
  WeightPolytope(std::size_t d, std::vector<LinearConstraint> constraints = {});

  std::size_t dimension() const { return d_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  // Extreme points, deduplicated and sorted lexicographically.
  const std::vector<WeightVector>& vertices() const { return vertices_; }
  // Vertex centroid (mean of vertices()).
  const WeightVector& centroid() const { return centroid_; }

  bool contains(std::span<const double> w, double tolerance = 1e-9) const;

  // The polytope as LP rows over the d weights: one equality sum(w) = 1 and
  // every constraint rewritten as a <= row. Objective is left zero.
  const lp::Problem& as_lp() const { return lp_; }

  // W(C u extra).
  WeightPolytope refined(std::span<const LinearConstraint> extra) const;

 private:
  std::size_t d_;
  std::vector<LinearConstraint> constraints_;
  lp::Problem lp_;
  std::vector<WeightVector> vertices_;
  WeightVector centroid_;
};

inline const std::vector<WeightVector>& vertices(const WeightPolytope& p) { return p.vertices(); }
inline const WeightVector& centroid(const WeightPolytope& p) { return p.centroid(); }

}  // namespace rsky
