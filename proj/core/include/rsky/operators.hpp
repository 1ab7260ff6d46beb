#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsky/family.hpp"
#include "rsky/model.hpp"
#include "rsky/polytope.hpp"

namespace rsky {

enum class OperatorKind { kSky, kNd, kPo, kTopK };

// ND evaluation strategy, named (Sorted|Unsorted) x (VE|LP) x (1|2 phases).
enum class NdAlgorithm { kSve1, kSve2, kUlp1, kUlp2 };

enum class PoMethod { kDirect, kPond };

std::string_view to_string(OperatorKind op);
std::string_view to_string(NdAlgorithm alg);
std::string_view to_string(PoMethod method);
std::optional<NdAlgorithm> parse_nd_algorithm(std::string_view name);
std::optional<PoMethod> parse_po_method(std::string_view name);

inline bool is_sorted_variant(NdAlgorithm a) { return a == NdAlgorithm::kSve1 || a == NdAlgorithm::kSve2; }
inline bool uses_vertex_enumeration(NdAlgorithm a) { return a == NdAlgorithm::kSve1 || a == NdAlgorithm::kSve2; }
inline bool is_two_phase(NdAlgorithm a) { return a == NdAlgorithm::kSve2 || a == NdAlgorithm::kUlp2; }

struct QueryResult {
  OperatorKind op = OperatorKind::kSky;
  std::vector<std::size_t> ids;  // strictly increasing
  std::chrono::nanoseconds elapsed{0};
  std::string config_digest;  // filled in by callers that know the inputs
  // Canonical scores aligned with `ids` (top-k only).
  std::vector<double> scores;
  // Substitutions and other remarks about how the result was computed.
  std::vector<std::string> notes;

  std::size_t size() const { return ids.size(); }
  double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

// Tuples not Pareto-dominated by any other tuple (block-nested loops).
QueryResult sky(const Relation& r);

// Tuple ids ordered by a key that never places an F-dominating tuple after
// the tuple it dominates: the centroid score for linear families, the sum of
// member scores for finite ones. Ties go to lexicographic value order, then id.
std::vector<std::size_t> topo_sort(const Relation& r, const FunctionFamily& family);

// Tuples not F-dominated by any other tuple. All four algorithms return the
// same set. Finite families are always tested by direct evaluation.
QueryResult nd(const Relation& r, const FunctionFamily& family, NdAlgorithm alg = NdAlgorithm::kSve1);

// Tuples that are the strict unique best under at least one function of the
// linear family over `polytope`, by one margin LP per ND member.
QueryResult po_direct(const Relation& r, const WeightPolytope& polytope);

// Same set as po_direct, obtained by pruning ND members that a convex blend
// of other members F-dominates.
QueryResult po_pond(const Relation& r, const WeightPolytope& polytope);

// Dispatches on the family: linear families use `method`; finite families
// are computed from the definition, one strict minimizer per member.
QueryResult po(const Relation& r, const FunctionFamily& family, PoMethod method = PoMethod::kPond);

}  // namespace rsky
