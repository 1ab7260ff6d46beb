#include "rsky/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rsky/error.hpp"

namespace rsky::io {
namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_double(std::string_view cell) {
  double v = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() || !std::isfinite(v)) return std::nullopt;
  return v;
}

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number()) {
    throw ParseError(where + ": missing numeric field '" + key + "'");
  }
  return obj[key].get<double>();
}

std::vector<LinearConstraint> constraints_from_json(const json& arr, std::size_t d) {
  if (!arr.is_array()) throw ParseError("constraints must be a JSON array");
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    const std::string where = "constraint " + std::to_string(i);
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    if (!e.contains("coeffs") || !e["coeffs"].is_array()) throw ParseError(where + ": missing 'coeffs' array");
    LinearConstraint c;
    for (const json& v : e["coeffs"]) {
      if (!v.is_number()) throw ParseError(where + ": non-numeric coefficient");
      c.coeffs.push_back(v.get<double>());
    }
    if (c.coeffs.size() != d) {
      throw ParseError(where + ": has " + std::to_string(c.coeffs.size()) + " coefficients, expected " +
                       std::to_string(d));
    }
    if (!e.contains("op") || !e["op"].is_string()) throw ParseError(where + ": missing 'op'");
    const auto op = e["op"].get<std::string>();
    if (op == "<=") {
      c.op = Relop::kLessEqual;
    } else if (op == ">=") {
      c.op = Relop::kGreaterEqual;
    } else {
      throw ParseError(where + ": op must be \"<=\" or \">=\", got \"" + op + "\"");
    }
    c.rhs = number_field(e, "rhs", where);
    out.push_back(std::move(c));
  }
  return out;
}

// SplitMix64 finalizer; derives independent stream seeds from one seed.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable draws from std::mt19937_64, whose output sequence the standard
// fixes; the library distributions are implementation-defined and unused.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal(double mean, double sd) {
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

DatasetConfig parse_dataset_config(std::string_view json_text) {
  const json doc = parse_json(json_text, "schema");
  if (!doc.is_object() || !doc.contains("attributes") || !doc["attributes"].is_array()) {
    throw ParseError("schema: expected {\"attributes\":[...]}");
  }
  std::vector<AttributeSpec> attrs;
  for (std::size_t i = 0; i < doc["attributes"].size(); ++i) {
    const json& a = doc["attributes"][i];
    const std::string where = "schema attribute " + std::to_string(i);
    if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) throw ParseError(where + ": missing 'name'");
    if (!a.contains("direction") || !a["direction"].is_string()) throw ParseError(where + ": missing 'direction'");
    const auto dir = a["direction"].get<std::string>();
    AttributeSpec spec{a["name"].get<std::string>(), Direction::kMinimize};
    if (dir == "max") {
      spec.direction = Direction::kMaximize;
    } else if (dir != "min") {
      throw ParseError(where + ": direction must be \"min\" or \"max\", got \"" + dir + "\"");
    }
    attrs.push_back(std::move(spec));
  }
  return DatasetConfig{Schema(std::move(attrs))};
}

DatasetConfig load_dataset_config(const std::filesystem::path& path) { return parse_dataset_config(read_file(path)); }

Relation normalize_relation(const std::vector<std::vector<double>>& raw_rows, const DatasetConfig& config) {
  const std::size_t d = config.schema.arity();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < raw_rows.size(); ++i) {
    if (raw_rows[i].size() != d) {
      throw ArityError("row " + std::to_string(i) + " has " + std::to_string(raw_rows[i].size()) + " values, expected " +
                       std::to_string(d));
    }
    for (std::size_t c = 0; c < d; ++c) {
      lo[c] = std::min(lo[c], raw_rows[i][c]);
      hi[c] = std::max(hi[c], raw_rows[i][c]);
    }
  }
  std::vector<double> spans(d, 0.0);
  for (std::size_t c = 0; c < d && !raw_rows.empty(); ++c) spans[c] = hi[c] - lo[c];

  std::vector<Tuple> tuples;
  tuples.reserve(raw_rows.size());
  for (std::size_t i = 0; i < raw_rows.size(); ++i) {
    Tuple t;
    t.id = i;
    t.raw_values = raw_rows[i];
    t.values.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
      const double v = raw_rows[i][c];
      if (spans[c] == 0.0) {
        t.values[c] = 0.0;
      } else if (config.schema[c].direction == Direction::kMinimize) {
        t.values[c] = std::clamp((v - lo[c]) / spans[c], 0.0, 1.0);
      } else {
        t.values[c] = std::clamp((hi[c] - v) / spans[c], 0.0, 1.0);
      }
    }
    tuples.push_back(std::move(t));
  }
  return Relation(config.schema, std::move(tuples), std::move(spans));
}

Relation read_csv(std::istream& in, const DatasetConfig& config) {
  const Schema& schema = config.schema;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) have_header = true;
  }
  if (!have_header) throw ParseError("csv: missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const auto header = split_csv(line);
  std::vector<std::size_t> column_of(schema.arity());
  for (std::size_t a = 0; a < schema.arity(); ++a) {
    const auto it = std::find(header.begin(), header.end(), schema[a].name);
    if (it == header.end()) throw ParseError("csv: missing column '" + schema[a].name + "' in header");
    column_of[a] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::vector<double>> rows;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ParseError("csv: row " + std::to_string(data_row) + " (line " + std::to_string(line_no) + ") has " +
                       std::to_string(cells.size()) + " cells, header has " + std::to_string(header.size()));
    }
    std::vector<double> row(schema.arity());
    for (std::size_t a = 0; a < schema.arity(); ++a) {
      const auto v = parse_double(cells[column_of[a]]);
      if (!v) {
        throw ParseError("csv: row " + std::to_string(data_row) + " (line " + std::to_string(line_no) + "), column '" +
                         schema[a].name + "': non-numeric cell '" + std::string(cells[column_of[a]]) + "'");
      }
      row[a] = *v;
    }
    rows.push_back(std::move(row));
    ++data_row;
  }
  return normalize_relation(rows, config);
}

Relation load_csv(const std::filesystem::path& path, const DatasetConfig& config) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return read_csv(in, config);
}

void write_csv(std::ostream& out, const Relation& r) {
  for (std::size_t a = 0; a < r.arity(); ++a) out << (a ? "," : "") << r.schema()[a].name;
  out << '\n';
  char buf[64];
  for (const Tuple& t : r.tuples()) {
    for (std::size_t a = 0; a < t.raw_values.size(); ++a) {
      const auto res = std::to_chars(buf, buf + sizeof buf, t.raw_values[a]);
      if (a) out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

std::vector<LinearConstraint> parse_constraints(std::string_view json_text, std::size_t d) {
  return constraints_from_json(parse_json(json_text, "constraints"), d);
}

FunctionFamily parse_family(std::string_view json_text, std::size_t d) {
  const json doc = parse_json(json_text, "family");
  if (!doc.is_object()) throw ParseError("family: expected a JSON object");
  if (doc.contains("linear")) {
    const json& lin = doc["linear"];
    if (!lin.is_object()) throw ParseError("family: 'linear' must be an object");
    const json constraints = lin.contains("constraints") ? lin["constraints"] : json::array();
    return FunctionFamily::linear(WeightPolytope(d, constraints_from_json(constraints, d)));
  }
  if (!doc.contains("finite") || !doc["finite"].is_array()) {
    throw ParseError("family: expected a 'finite' array or a 'linear' object");
  }
  std::vector<ScoringFunction> members;
  for (std::size_t m = 0; m < doc["finite"].size(); ++m) {
    const json& terms = doc["finite"][m];
    const std::string where = "family member " + std::to_string(m);
    if (!terms.is_array()) throw ParseError(where + ": expected an array of terms");
    std::vector<Term> parsed;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const json& term = terms[k];
      const std::string twhere = where + " term " + std::to_string(k);
      if (!term.is_object() || !term.contains("attr") || !term["attr"].is_number_integer() ||
          term["attr"].get<long long>() < 0) {
        throw ParseError(twhere + ": 'attr' must be a non-negative integer");
      }
      Term t;
      t.attr = term["attr"].get<std::size_t>();
      if (t.attr >= d) {
        throw ParseError(twhere + ": attribute " + std::to_string(t.attr) + " out of range for arity " +
                         std::to_string(d));
      }
      t.coefficient = number_field(term, "coeff", twhere);
      t.exponent = term.contains("exp") ? number_field(term, "exp", twhere) : 1.0;
      parsed.push_back(t);
    }
    try {
      members.emplace_back(std::move(parsed));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return FunctionFamily::finite(std::move(members));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view to_string(Distribution dist) {
  switch (dist) {
    case Distribution::kIndependent: return "independent";
    case Distribution::kCorrelated: return "correlated";
    case Distribution::kAnticorrelated: return "anticorrelated";
  }
  return "?";
}

Distribution parse_distribution(std::string_view name) {
  for (auto d : {Distribution::kIndependent, Distribution::kCorrelated, Distribution::kAnticorrelated}) {
    if (to_string(d) == name) return d;
  }
  throw ValidationError("unknown distribution '" + std::string(name) + "'");
}

Relation gen_synthetic(const SyntheticSpec& spec) {
  if (spec.n == 0 || spec.d == 0) throw ValidationError("synthetic spec needs n >= 1 and d >= 1");
  const std::size_t d = spec.d;
  std::vector<Stream> columns;
  columns.reserve(d);
  for (std::size_t c = 0; c < d; ++c) columns.emplace_back(splitmix64(spec.seed ^ splitmix64(c + 1)));
  Stream row_stream(splitmix64(spec.seed ^ splitmix64(0)));

  std::vector<std::vector<double>> rows(spec.n, std::vector<double>(d));
  for (auto& row : rows) {
    switch (spec.distribution) {
      case Distribution::kIndependent:
        for (std::size_t c = 0; c < d; ++c) row[c] = columns[c].uniform();
        break;
      case Distribution::kCorrelated: {
        const double base = row_stream.uniform();
        for (std::size_t c = 0; c < d; ++c) row[c] = clamp01(base + columns[c].normal(0.0, 0.05));
        break;
      }
      case Distribution::kAnticorrelated: {
        // Spread around the hyperplane sum(x) = d * level with zero-sum offsets.
        const double level = clamp01(row_stream.normal(0.5, 0.05));
        double mean = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          row[c] = columns[c].uniform() - 0.5;
          mean += row[c];
        }
        mean /= static_cast<double>(d);
        for (std::size_t c = 0; c < d; ++c) row[c] = clamp01(level + row[c] - mean);
        break;
      }
    }
  }
  return normalize_relation(rows, DatasetConfig{Schema::uniform(d)});
}

}  // namespace rsky::io
