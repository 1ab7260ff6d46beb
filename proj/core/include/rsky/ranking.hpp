#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsky/model.hpp"
#include "rsky/operators.hpp"
#include "rsky/polytope.hpp"

namespace rsky {

// The k lowest-scoring tuples under f. Scores within kTolerance count as
// tied and ties go to the lower id. ids come back ascending with their
// canonical scores alongside; k > |r| returns everything. Throws
// ValidationError when k == 0.
QueryResult topk(const Relation& r, const ScoringFunction& f, std::size_t k);

// |S n T_k| / k.
double precision(std::span<const std::size_t> s, const Relation& r, const ScoringFunction& f, std::size_t k);
// |S n T_k| / |S|. Throws ValidationError on an empty S.
double recall(std::span<const std::size_t> s, const Relation& r, const ScoringFunction& f, std::size_t k);

// The linear function weighted by the polytope's vertex centroid.
ScoringFunction centroid_function(const WeightPolytope& polytope);

// Converts weights over raw attribute values into a canonical scoring
// function: maximize-direction columns read the weighted raw sum as utility,
// minimize-direction columns as cost. Throws ArityError on a length mismatch
// and ValidationError when no weighted column varies.
ScoringFunction function_from_raw_weights(const Relation& r, std::span<const double> raw_weights);

}  // namespace rsky
