#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "rsky/data_io.hpp"
#include "rsky/error.hpp"
#include "rsky/operators.hpp"
#include "rsky/ranking.hpp"
#include "rsky/version.hpp"

namespace rsky::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string schema;
  std::string family;
  std::string constraints;
  std::string output = "json";
  std::string algorithm = "sve1";
  std::string method = "pond";
  std::string weights;
  std::optional<std::size_t> family_member;
  std::string set_from;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string dist = "independent";
  std::uint64_t seed = 0;
  std::string out;
  std::string schema_out;
  std::size_t repeat = 1;
  std::string algorithms = "sky,nd-sve1,nd-sve2,nd-ulp1,nd-ulp2,po-direct,po-pond";
  bool no_timing = false;
};

// FNV-1a over everything that determines a result.
class Digest {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    hash_ ^= 0xff;  // field separator
    hash_ *= 0x100000001b3ULL;
  }
  void add_file(const std::string& path) {
    if (!path.empty() && std::filesystem::is_regular_file(path)) add(io::read_file(path));
  }
  std::string hex() const {
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << hash_;
    return ss.str();
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string digest_of(const std::string& command, const std::vector<std::string>& args, const Options& o) {
  Digest dg;
  dg.add("rsky");
  dg.add(kVersion);
  dg.add(command);
  for (const auto& a : args) dg.add(a);
  for (const auto* path : {&o.input, &o.schema, &o.family, &o.constraints, &o.set_from}) dg.add_file(*path);
  return dg.hex();
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string_view rest(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view cell = rest.substr(0, comma);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ParseError(std::string(what) + ": '" + std::string(cell) + "' is not a number");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ParseError(std::string(what) + ": empty list");
  return out;
}

Relation load_relation(const Options& o) {
  return io::load_csv(o.input, io::load_dataset_config(o.schema));
}

FunctionFamily load_family(const Options& o, std::size_t d) {
  if (!o.family.empty()) return io::parse_family(io::read_file(o.family), d);
  std::vector<LinearConstraint> constraints;
  if (!o.constraints.empty()) constraints = io::parse_constraints(io::read_file(o.constraints), d);
  return FunctionFamily::linear(WeightPolytope(d, std::move(constraints)));
}

// The single scoring function used by topk and metrics.
struct ChosenFunction {
  ScoringFunction f;
  std::optional<std::vector<double>> raw_weights;
};

ChosenFunction choose_function(const Options& o, const Relation& r) {
  if (!o.weights.empty()) {
    auto w = parse_number_list(o.weights, "--weights");
    return {function_from_raw_weights(r, w), w};
  }
  const FunctionFamily family = load_family(o, r.arity());
  if (o.family_member) {
    if (!family.is_finite()) throw ValidationError("--family-member requires a finite family");
    if (*o.family_member >= family.members().size()) {
      throw ValidationError("--family-member " + std::to_string(*o.family_member) + " out of range (family has " +
                            std::to_string(family.members().size()) + " members)");
    }
    return {family.members()[*o.family_member], std::nullopt};
  }
  if (!family.is_linear()) throw ValidationError("a finite family needs --family-member to pick a function");
  return {centroid_function(family.polytope()), std::nullopt};
}

void emit(const QueryResult& q, const Options& o, std::ostream& out, std::ostream& err,
          const std::vector<double>* raw_scores = nullptr) {
  for (const auto& note : q.notes) err << "note: " << note << '\n';
  const double elapsed = o.no_timing ? 0.0 : q.elapsed_ms();
  if (o.output == "csv") {
    out << "id";
    if (!q.scores.empty()) out << ",score";
    if (raw_scores) out << ",raw_score";
    out << '\n';
    for (std::size_t i = 0; i < q.ids.size(); ++i) {
      out << q.ids[i];
      if (!q.scores.empty()) out << ',' << ordered_json(q.scores[i]).dump();
      if (raw_scores) out << ',' << ordered_json((*raw_scores)[i]).dump();
      out << '\n';
    }
    return;
  }
  ordered_json j;
  j["operator"] = std::string(to_string(q.op));
  j["ids"] = q.ids;
  j["size"] = q.size();
  j["elapsed_ms"] = elapsed;
  j["config_digest"] = q.config_digest;
  if (!q.scores.empty()) j["scores"] = q.scores;
  if (raw_scores) j["raw_scores"] = *raw_scores;
  out << j.dump() << '\n';
}

std::vector<std::size_t> parse_id_list(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("id set: ") + e.what());
    }
    const nlohmann::json& ids = doc.is_object() ? doc.value("ids", nlohmann::json()) : doc;
    if (!ids.is_array()) throw ParseError("id set: expected an 'ids' array");
    std::vector<std::size_t> out;
    for (const auto& v : ids) {
      if (!v.is_number_unsigned()) throw ParseError("id set: ids must be non-negative integers");
      out.push_back(v.get<std::size_t>());
    }
    return out;
  }
  std::vector<std::size_t> out;
  std::string token;
  std::istringstream in(text);
  while (in >> token) {
    std::string_view tok(token);
    if (tok == "id") continue;  // header line from csv output
    while (!tok.empty() && tok.back() == ',') tok.remove_suffix(1);
    if (tok.empty()) continue;
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("id set: '" + std::string(tok) + "' is not a tuple id");
    }
    out.push_back(v);
  }
  return out;
}

// `--set-from` is a file of ids, or an operator spec: sky | nd[:alg] | po[:method].
std::vector<std::size_t> resolve_set(const Options& o, const Relation& r) {
  if (std::filesystem::is_regular_file(o.set_from)) {
    auto ids = parse_id_list(io::read_file(o.set_from));
    for (std::size_t id : ids) {
      if (id >= r.size()) throw ValidationError("id set: tuple id " + std::to_string(id) + " out of range");
    }
    return ids;
  }
  const std::string_view spec(o.set_from);
  const auto colon = spec.find(':');
  const std::string_view op = spec.substr(0, colon);
  const std::string_view variant = colon == std::string_view::npos ? std::string_view() : spec.substr(colon + 1);
  if (op == "sky" && variant.empty()) return sky(r).ids;
  if (op == "nd") {
    const auto alg = parse_nd_algorithm(variant.empty() ? "sve1" : variant);
    if (!alg) throw ValidationError("unknown ND algorithm '" + std::string(variant) + "'");
    return nd(r, load_family(o, r.arity()), *alg).ids;
  }
  if (op == "po") {
    const auto method = parse_po_method(variant.empty() ? "pond" : variant);
    if (!method) throw ValidationError("unknown PO method '" + std::string(variant) + "'");
    return po(r, load_family(o, r.arity()), *method).ids;
  }
  throw ValidationError("--set-from '" + o.set_from + "' is neither a file nor sky | nd[:alg] | po[:method]");
}

int cmd_sky(const Options& o, const std::string& digest, std::ostream& out, std::ostream& err) {
  QueryResult q = sky(load_relation(o));
  q.config_digest = digest;
  emit(q, o, out, err);
  return kExitOk;
}

int cmd_nd(const Options& o, const std::string& digest, std::ostream& out, std::ostream& err) {
  const Relation r = load_relation(o);
  const auto alg = parse_nd_algorithm(o.algorithm);
  QueryResult q = nd(r, load_family(o, r.arity()), *alg);
  q.config_digest = digest;
  emit(q, o, out, err);
  return kExitOk;
}

int cmd_po(const Options& o, const std::string& digest, std::ostream& out, std::ostream& err) {
  const Relation r = load_relation(o);
  QueryResult q = po(r, load_family(o, r.arity()), *parse_po_method(o.method));
  q.config_digest = digest;
  emit(q, o, out, err);
  return kExitOk;
}

int cmd_topk(const Options& o, const std::string& digest, std::ostream& out, std::ostream& err) {
  const Relation r = load_relation(o);
  const ChosenFunction chosen = choose_function(o, r);
  QueryResult q = topk(r, chosen.f, o.k);
  q.config_digest = digest;
  if (chosen.raw_weights) {
    std::vector<double> raw;
    for (std::size_t id : q.ids) raw.push_back(linear_score(*chosen.raw_weights, r[id].raw_values));
    emit(q, o, out, err, &raw);
  } else {
    emit(q, o, out, err);
  }
  return kExitOk;
}

int cmd_metrics(const Options& o, const std::string& digest, std::ostream& out, std::ostream&) {
  const Relation r = load_relation(o);
  const ChosenFunction chosen = choose_function(o, r);
  const auto s = resolve_set(o, r);
  const double pre = precision(s, r, chosen.f, o.k);
  const double rec = recall(s, r, chosen.f, o.k);
  if (o.output == "csv") {
    out << "set_size,k,precision,recall\n"
        << s.size() << ',' << o.k << ',' << ordered_json(pre).dump() << ',' << ordered_json(rec).dump() << '\n';
    return kExitOk;
  }
  ordered_json j;
  j["operator"] = "METRICS";
  j["set"] = o.set_from;
  j["set_size"] = s.size();
  j["k"] = o.k;
  j["precision"] = pre;
  j["recall"] = rec;
  j["config_digest"] = digest;
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  io::SyntheticSpec spec{o.n, o.d, io::parse_distribution(o.dist), o.seed};
  const Relation r = io::gen_synthetic(spec);
  if (o.out.empty()) {
    io::write_csv(out, r);
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + o.out + "'");
    io::write_csv(file, r);
  }
  if (!o.schema_out.empty()) {
    ordered_json j;
    j["attributes"] = ordered_json::array();
    for (const auto& a : r.schema().attributes()) j["attributes"].push_back({{"name", a.name}, {"direction", "min"}});
    j["generator"] = {{"id", std::string(io::kGeneratorId)},
                      {"distribution", o.dist},
                      {"n", o.n},
                      {"d", o.d},
                      {"seed", o.seed}};
    std::ofstream file(o.schema_out, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + o.schema_out + "'");
    file << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_bench(const Options& o, const std::string& digest, std::ostream& out) {
  const Relation r = o.input.empty()
                         ? io::gen_synthetic({o.n, o.d, io::parse_distribution(o.dist), o.seed})
                         : load_relation(o);
  const FunctionFamily family = load_family(o, r.arity());
  if (!family.is_linear()) throw ValidationError("bench needs a linear family (--constraints)");
  const WeightPolytope& polytope = family.polytope();

  using Runner = std::function<QueryResult()>;
  const std::map<std::string, Runner> runners = {
      {"sky", [&] { return sky(r); }},
      {"nd-sve1", [&] { return nd(r, family, NdAlgorithm::kSve1); }},
      {"nd-sve2", [&] { return nd(r, family, NdAlgorithm::kSve2); }},
      {"nd-ulp1", [&] { return nd(r, family, NdAlgorithm::kUlp1); }},
      {"nd-ulp2", [&] { return nd(r, family, NdAlgorithm::kUlp2); }},
      {"po-direct", [&] { return po_direct(r, polytope); }},
      {"po-pond", [&] { return po_pond(r, polytope); }},
  };
  std::vector<std::string> selected;
  std::istringstream names(o.algorithms);
  for (std::string name; std::getline(names, name, ',');) {
    if (!runners.count(name)) throw ValidationError("unknown bench algorithm '" + name + "'");
    selected.push_back(name);
  }

  struct Row {
    std::string algorithm;
    std::size_t repeat;
    double elapsed_ms;
    std::size_t size;
  };
  std::vector<Row> rows;
  std::map<std::string, std::size_t> sizes;
  for (const auto& name : selected) {
    for (std::size_t rep = 0; rep < o.repeat; ++rep) {
      const QueryResult q = runners.at(name)();
      rows.push_back({name, rep, o.no_timing ? 0.0 : q.elapsed_ms(), q.size()});
      sizes[name.substr(0, name.find('-'))] = q.size();
    }
  }
  // Every row carries all three operator sizes.
  if (!sizes.count("sky")) sizes["sky"] = sky(r).size();
  if (!sizes.count("nd")) sizes["nd"] = nd(r, family, NdAlgorithm::kSve1).size();
  if (!sizes.count("po")) sizes["po"] = po_pond(r, polytope).size();

  const std::string dist = o.input.empty() ? o.dist : "file";
  out << "algorithm,repeat,n,d,dist,seed,num_constraints,elapsed_ms,result_size,sky_size,nd_size,po_size,"
         "config_digest\n";
  for (const auto& row : rows) {
    out << row.algorithm << ',' << row.repeat << ',' << r.size() << ',' << r.arity() << ',' << dist << ','
        << o.seed << ',' << polytope.constraints().size() << ',' << ordered_json(row.elapsed_ms).dump() << ','
        << row.size << ',' << sizes["sky"] << ',' << sizes["nd"] << ',' << sizes["po"] << ',' << digest << '\n';
  }
  return kExitOk;
}

void add_output_flags(CLI::App* sub, Options& o) {
  sub->add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--no-timing", o.no_timing, "Report elapsed_ms as 0 for byte-stable output");
}

void add_data_flags(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Dataset CSV")->required()->check(CLI::ExistingFile);
  sub->add_option("--schema", o.schema, "Dataset schema JSON")->required()->check(CLI::ExistingFile);
}

void add_family_flags(CLI::App* sub, Options& o) {
  auto* fam = sub->add_option("--family", o.family, "Function family JSON")->check(CLI::ExistingFile);
  auto* con = sub->add_option("--constraints", o.constraints, "Weight constraints JSON (linear family)")
                  ->check(CLI::ExistingFile);
  fam->excludes(con);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Skyline, restricted-skyline (ND/PO) and top-k queries", "rsky"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* sky_cmd = app.add_subcommand("sky", "Classical skyline");
  add_data_flags(sky_cmd, o);
  add_output_flags(sky_cmd, o);

  auto* nd_cmd = app.add_subcommand("nd", "Non-dominated restricted skyline");
  add_data_flags(nd_cmd, o);
  add_family_flags(nd_cmd, o);
  nd_cmd->add_option("--algorithm", o.algorithm, "sve1 | sve2 | ulp1 | ulp2")
      ->check(CLI::IsMember({"sve1", "sve2", "ulp1", "ulp2"}));
  add_output_flags(nd_cmd, o);

  auto* po_cmd = app.add_subcommand("po", "Potentially optimal restricted skyline");
  add_data_flags(po_cmd, o);
  add_family_flags(po_cmd, o);
  po_cmd->add_option("--method", o.method, "direct | pond")->check(CLI::IsMember({"direct", "pond"}));
  add_output_flags(po_cmd, o);

  auto* topk_cmd = app.add_subcommand("topk", "Top-k ranking query");
  add_data_flags(topk_cmd, o);
  topk_cmd->add_option("--k", o.k, "Number of results")->required()->check(CLI::PositiveNumber);
  auto* w_opt = topk_cmd->add_option("--weights", o.weights, "Comma-separated weights over raw attribute values");
  auto* fam_opt = topk_cmd->add_option("--family", o.family, "Function family JSON")->check(CLI::ExistingFile);
  auto* mem_opt = topk_cmd->add_option("--family-member", o.family_member, "Index of the family member to rank by");
  mem_opt->needs(fam_opt);
  w_opt->excludes(fam_opt);
  add_output_flags(topk_cmd, o);

  auto* metrics_cmd = app.add_subcommand("metrics", "Precision and recall of a set against top-k");
  add_data_flags(metrics_cmd, o);
  add_family_flags(metrics_cmd, o);
  metrics_cmd->add_option("--set-from", o.set_from, "File of ids, or sky | nd[:alg] | po[:method]")->required();
  metrics_cmd->add_option("--k", o.k, "Top-k size")->required()->check(CLI::PositiveNumber);
  metrics_cmd->add_option("--weights", o.weights, "Rank by these raw-space weights instead of the centroid");
  metrics_cmd->add_option("--family-member", o.family_member, "Rank by this member of a finite family");
  add_output_flags(metrics_cmd, o);

  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("--n", o.n, "Tuples")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--d", o.d, "Attributes")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dist", o.dist, "independent | correlated | anticorrelated")
      ->check(CLI::IsMember({"independent", "correlated", "anticorrelated"}));
  gen_cmd->add_option("--seed", o.seed, "PRNG seed");
  gen_cmd->add_option("--out", o.out, "Output CSV (stdout when omitted)");
  gen_cmd->add_option("--schema-out", o.schema_out, "Also write a schema JSON with generator provenance");

  auto* bench_cmd = app.add_subcommand("bench", "Time every operator; raw measurements as CSV");
  bench_cmd->add_option("--n", o.n, "Tuples")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--d", o.d, "Attributes")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--dist", o.dist, "independent | correlated | anticorrelated")
      ->check(CLI::IsMember({"independent", "correlated", "anticorrelated"}));
  bench_cmd->add_option("--seed", o.seed, "PRNG seed");
  bench_cmd->add_option("--constraints", o.constraints, "Weight constraints JSON")->check(CLI::ExistingFile);
  bench_cmd->add_option("--repeat", o.repeat, "Runs per algorithm")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--algorithms", o.algorithms, "Comma-separated subset of the algorithms");
  auto* bench_in = bench_cmd->add_option("--input", o.input, "Dataset CSV instead of generated data")
                       ->check(CLI::ExistingFile);
  bench_cmd->add_option("--schema", o.schema, "Schema for --input")->check(CLI::ExistingFile)->needs(bench_in);
  bench_in->needs("--schema");
  bench_cmd->add_flag("--no-timing", o.no_timing, "Report elapsed_ms as 0");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run 'rsky " << sub->get_name() << " --help' for usage\n";
    } else {
      err << "run 'rsky --help' for usage\n";
    }
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "bench" && o.input.empty() && (o.n == 0 || o.d == 0)) {
    err << "error: bench needs --n and --d, or --input with --schema\n";
    return kExitUsage;
  }
  const std::vector<std::string> arg_copy(args.begin(), args.end());
  try {
    const std::string digest = digest_of(name, arg_copy, o);
    if (name == "sky") return cmd_sky(o, digest, out, err);
    if (name == "nd") return cmd_nd(o, digest, out, err);
    if (name == "po") return cmd_po(o, digest, out, err);
    if (name == "topk") return cmd_topk(o, digest, out, err);
    if (name == "metrics") return cmd_metrics(o, digest, out, err);
    if (name == "gen") return cmd_gen(o, out);
    return cmd_bench(o, digest, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace rsky::cli
