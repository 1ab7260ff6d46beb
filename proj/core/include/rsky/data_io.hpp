#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rsky/family.hpp"
#include "rsky/model.hpp"
#include "rsky/polytope.hpp"

namespace rsky::io {

// Dataset configuration: attribute names and their raw polarity. Columns are
// always min-max normalized into canonical space.
struct DatasetConfig {
  Schema schema;
};

// {"attributes":[{"name":"hp","direction":"max"}, ...]}
DatasetConfig parse_dataset_config(std::string_view json_text);
DatasetConfig load_dataset_config(const std::filesystem::path& path);

// Per column: minimize -> (v - min) / (max - min), maximize -> (max - v) /
// (max - min), constant -> 0. Throws ArityError on a ragged row.
Relation normalize_relation(const std::vector<std::vector<double>>& raw_rows, const DatasetConfig& config);

// Reads a header row naming the columns, then one numeric row per tuple.
// Columns not named by the schema are ignored. Throws ParseError naming the
// row and column on a missing column, a non-numeric cell or a short row.
Relation read_csv(std::istream& in, const DatasetConfig& config);
Relation load_csv(const std::filesystem::path& path, const DatasetConfig& config);

// Header of schema names, then raw values in shortest round-trip form.
void write_csv(std::ostream& out, const Relation& r);

// JSON array of {"coeffs":[...], "op":"<="|">=", "rhs":number}. Throws
// ParseError naming the offending entry, including a length other than d.
std::vector<LinearConstraint> parse_constraints(std::string_view json_text, std::size_t d);

// {"finite":[[{"attr":0,"coeff":1,"exp":2}, ...], ...]} or
// {"linear":{"constraints":[...]}}. Throws ParseError on malformed text and
// ValidationError for negative coefficients, exponents below 1, or an empty
// weight polytope.
FunctionFamily parse_family(std::string_view json_text, std::size_t d);

std::string read_file(const std::filesystem::path& path);

enum class Distribution { kIndependent, kCorrelated, kAnticorrelated };

std::string_view to_string(Distribution dist);
Distribution parse_distribution(std::string_view name);

struct SyntheticSpec {
  std::size_t n = 1;
  std::size_t d = 2;
  Distribution distribution = Distribution::kIndependent;
  std::uint64_t seed = 0;
};

// Identity of the generator behind gen_synthetic, for provenance records.
inline constexpr std::string_view kGeneratorId = "mt19937_64/splitmix64-streams/v1";

// Deterministic for a fixed spec on every platform: one std::mt19937_64
// stream per column plus one row stream, seeded through SplitMix64, with all
// real-valued draws derived from raw 64-bit outputs. Attributes are named
// a0..a{d-1}, minimize direction, then normalized like any loaded dataset.
Relation gen_synthetic(const SyntheticSpec& spec);

}  // namespace rsky::io
