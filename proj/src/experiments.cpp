// SPDX-License-Identifier: Apache-2.0
#include "qcompile/experiments.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcompile/mitm.hpp"
#include "qcompile/qec.hpp"

namespace qcompile::experiments {

using nlohmann::json;

const char* tool_version() { return "qcompile 0.1.0"; }

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::uint64_t config_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

/// Strict field access: every field must be consumed, unknown fields rejected.
class Schema {
 public:
  explicit Schema(const json& j) : j_(j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
  }

  const json& require(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) throw ConfigError("missing required field: " + key);
    return *it;
  }

  const json* optional(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError("unknown field: " + it.key());
      }
    }
  }

 private:
  const json& j_;
  std::set<std::string> seen_;
};

void check_version(Schema& s) {
  const json& v = s.require("version");
  if (!v.is_number_integer() || v.get<int>() != 1) {
    throw ConfigError("version: expected 1");
  }
}

template <typename T>
T as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for field: " + field);
  }
}

VariantMode parse_mode(const json& j) {
  const auto s = as<std::string>(j, "mode");
  if (s == "four") return VariantMode::four;
  if (s == "two") return VariantMode::two;
  throw ConfigError("mode: expected \"four\" or \"two\"");
}

Unitary parse_target(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "cnot") return Unitary::cnot();
    if (s == "swap") return Unitary::swap_gate();
    throw ConfigError("target: expected \"cnot\", \"swap\", matrix, or {file}");
  }
  if (j.is_array()) return unitary_from_json(j.dump());
  if (j.is_object() && j.contains("file") && j.size() == 1) {
    std::ifstream is(j["file"].get<std::string>());
    if (!is) throw ConfigError("target.file: cannot open");
    std::stringstream buf;
    buf << is.rdbuf();
    return unitary_from_json(buf.str());
  }
  throw ConfigError("target: expected \"cnot\", \"swap\", matrix, or {file}");
}

IndexParams parse_index_params(const json* j) {
  IndexParams p;
  if (!j) return p;
  Schema s(*j);
  if (const json* m = s.optional("mode")) {
    const auto ms = as<std::string>(*m, "index.mode");
    if (ms == "exact") {
      p.mode = IndexMode::exact_scan;
    } else if (ms == "approx") {
      p.mode = IndexMode::approximate_graph;
    } else {
      throw ConfigError("index.mode: expected \"exact\" or \"approx\"");
    }
  }
  if (const json* v = s.optional("neighbor_degree"))
    p.neighbor_degree = as<int>(*v, "index.neighbor_degree");
  if (const json* v = s.optional("build_beam"))
    p.build_beam = as<int>(*v, "index.build_beam");
  if (const json* v = s.optional("query_beam"))
    p.query_beam = as<int>(*v, "index.query_beam");
  if (const json* v = s.optional("rerank_k"))
    p.rerank_k = as<int>(*v, "index.rerank_k");
  if (const json* v = s.optional("build_seed"))
    p.build_seed = as<std::uint64_t>(*v, "index.build_seed");
  s.finish();
  if (p.neighbor_degree < 2 || p.build_beam < 1 || p.query_beam < 1 ||
      p.rerank_k < 1) {
    throw ConfigError("index: parameters must be positive");
  }
  return p;
}

CompileOptions parse_compile_options(Schema& s) {
  CompileOptions opts;
  opts.index = parse_index_params(s.optional("index"));
  if (const json* v = s.optional("budget_bytes"))
    opts.budget_bytes = as<std::uint64_t>(*v, "budget_bytes");
  if (const json* v = s.optional("threads")) {
    opts.threads = as<int>(*v, "threads");
    if (opts.threads < 1) throw ConfigError("threads: must be >= 1");
  }
  if (const json* v = s.optional("early_exit_infidelity"))
    opts.early_exit_infidelity = as<double>(*v, "early_exit_infidelity");
  return opts;
}

const char* index_mode_name(IndexMode m) {
  return m == IndexMode::exact_scan ? "exact" : "approx";
}

json result_to_json(const CompilationResult& r) {
  return json{{"word", r.word.to_string()},
              {"infidelity", r.infid},
              {"frobenius", r.frobenius},
              {"half_depth", r.half_depth},
              {"stats",
               {{"index_seconds", r.stats.index_seconds},
                {"query_seconds", r.stats.query_seconds},
                {"points", r.stats.points},
                {"candidates_examined", r.stats.candidates_examined}}}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << text;
}

std::string file_header(const json& cfg) {
  return std::string("# ") + tool_version() + " config=" +
         hash_hex(config_hash(cfg)) + "\n";
}

}  // namespace

std::string run_compile(const std::string& config_json) {
  const json cfg = json::parse(config_json);
  Schema s(cfg);
  check_version(s);
  const Unitary target = parse_target(s.require("target"));
  const VariantMode mode = parse_mode(s.require("mode"));
  const auto gate_seed = as<std::uint64_t>(s.require("gate_seed"), "gate_seed");
  const int half_depth = as<int>(s.require("half_depth"), "half_depth");
  if (half_depth < 0) throw ConfigError("half_depth: must be >= 0");
  CompileOptions opts = parse_compile_options(s);
  const json* output = s.optional("output_path");
  const json* snapshot = s.optional("snapshot_path");
  s.finish();

  const GateSet gs = make_variants(haar_random(4, gate_seed), mode);
  CompilationResult r;
  if (snapshot && half_depth > 0) {
    NnIndex index = NnIndex::load_snapshot(
        as<std::string>(*snapshot, "snapshot_path"), gs, half_depth);
    r = compile_mitm(gs, target, half_depth, index, opts);
  } else {
    r = compile_mitm(gs, target, half_depth, opts);
  }
  json out = result_to_json(r);
  out["tool"] = tool_version();
  out["config"] = hash_hex(config_hash(cfg));
  if (output) {
    write_text(as<std::string>(*output, "output_path"), out.dump(2) + "\n");
  }
  return out.dump();
}

std::string run_scaling(const std::string& config_json) {
  const json cfg = json::parse(config_json);
  Schema s(cfg);
  check_version(s);
  const VariantMode mode = parse_mode(s.require("mode"));
  const json* target_j = s.optional("target");
  const Unitary target = target_j ? parse_target(*target_j) : Unitary::cnot();
  const auto seeds = as<std::vector<std::uint64_t>>(s.require("seeds"), "seeds");
  const auto depths = as<std::vector<int>>(s.require("depths"), "depths");
  CompileOptions opts = parse_compile_options(s);
  const std::string csv_path = as<std::string>(s.require("csv_path"), "csv_path");
  const json* summary_path = s.optional("summary_path");
  s.finish();
  if (seeds.empty() || depths.empty()) {
    throw ConfigError("seeds/depths: must be nonempty");
  }

  auto write_csv = [&](const std::vector<ScalingRow>& rows) {
    std::ostringstream os;
    os << file_header(cfg)
       << "seed,mode,total_depth,best_infidelity,best_frobenius,wall_seconds,"
          "points,index_mode\n";
    os.precision(17);
    for (const auto& r : rows) {
      os << r.gate_set_seed << ','
         << (r.mode == VariantMode::four ? "four" : "two") << ','
         << r.total_depth << ',' << r.best_infidelity << ','
         << r.best_frobenius << ',' << r.wall_seconds << ',' << r.points << ','
         << index_mode_name(r.index_mode) << '\n';
    }
    write_text(csv_path, os.str());
  };

  std::vector<ScalingRow> partial;
  ScalingOutcome outcome;
  try {
    outcome = scaling_experiment(mode, target, seeds, depths, opts, &partial);
  } catch (...) {
    write_csv(partial);  // abort with partial results persisted
    throw;
  }
  write_csv(outcome.rows);

  json out{{"tool", tool_version()},
           {"config", hash_hex(config_hash(cfg))},
           {"rows", outcome.rows.size()},
           {"csv_path", csv_path}};
  if (outcome.fit) {
    out["fit"] = {{"slope", outcome.fit->slope},
                  {"intercept", outcome.fit->intercept}};
  } else {
    out["fit"] = nullptr;
    out["fit_warning"] = "need at least two depths with nonzero median infidelity";
  }
  if (summary_path) {
    write_text(as<std::string>(*summary_path, "summary_path"), out.dump(2) + "\n");
  }
  return out.dump();
}

std::string run_mesh(const std::string& config_json) {
  const json cfg = json::parse(config_json);
  Schema s(cfg);
  check_version(s);
  const VariantMode mode = parse_mode(s.require("mode"));
  const auto gate_seed = as<std::uint64_t>(s.require("gate_seed"), "gate_seed");
  const int half_depth = as<int>(s.require("half_depth"), "half_depth");
  const int n_targets = as<int>(s.require("n_targets"), "n_targets");
  const auto target_seed =
      as<std::uint64_t>(s.require("target_seed"), "target_seed");
  CompileOptions opts = parse_compile_options(s);
  s.finish();

  const GateSet gs = make_variants(haar_random(4, gate_seed), mode);
  const MeshEstimate est =
      mesh_size_estimate(gs, half_depth, n_targets, target_seed, opts);
  json out{{"tool", tool_version()},
           {"config", hash_hex(config_hash(cfg))},
           {"max_infidelity", est.max_infidelity},
           {"max_frobenius", est.max_frobenius},
           {"n_targets", n_targets},
           {"half_depth", half_depth}};
  return out.dump();
}

namespace {

Protocol parse_protocol(const std::string& s) {
  if (s == "no_qec") return Protocol::no_qec;
  if (s == "encode_only") return Protocol::encode_only;
  if (s == "mf_qec") return Protocol::mf_qec;
  throw ConfigError("protocols: expected no_qec|encode_only|mf_qec");
}

}  // namespace

std::string run_qec_sweep(const std::string& config_json) {
  const json cfg = json::parse(config_json);
  Schema s(cfg);
  check_version(s);
  SweepConfig sc;
  for (const auto& p :
       as<std::vector<std::string>>(s.require("protocols"), "protocols")) {
    sc.protocols.push_back(parse_protocol(p));
  }
  const json* eps = s.optional("epsilons");
  const json* grid = s.optional("grid");
  if (!!eps == !!grid) {
    throw ConfigError("exactly one of epsilons / grid is required");
  }
  if (eps) {
    for (double e : as<std::vector<double>>(*eps, "epsilons")) {
      sc.grid.push_back(SweepPoint{e, e});
    }
  } else {
    Schema g(*grid);
    const double lo = as<double>(g.require("min"), "grid.min");
    const double hi = as<double>(g.require("max"), "grid.max");
    const int cells = as<int>(g.require("cells"), "grid.cells");
    g.finish();
    if (!(lo > 0 && hi > lo && cells >= 1)) throw ConfigError("grid: bad bounds");
    for (int i = 0; i < cells; ++i) {
      const double a = lo * std::pow(hi / lo, static_cast<double>(i) / cells);
      const double b =
          lo * std::pow(hi / lo, static_cast<double>(i + 1) / cells);
      sc.grid.push_back(SweepPoint{a, b});
    }
  }
  sc.samples_per_point =
      as<int>(s.require("samples_per_point"), "samples_per_point");
  sc.seed = as<std::uint64_t>(s.require("seed"), "seed");
  if (const json* v = s.optional("sites")) {
    const auto site = as<std::string>(*v, "sites");
    if (site == "logical_ops_only") {
      sc.sites = NoiseSites::logical_ops_only;
    } else if (site == "all_gates") {
      sc.sites = NoiseSites::all_gates;
    } else {
      throw ConfigError("sites: expected logical_ops_only|all_gates");
    }
  }
  if (const json* v = s.optional("threads")) sc.threads = as<int>(*v, "threads");
  const std::string csv_path = as<std::string>(s.require("csv_path"), "csv_path");
  s.finish();

  const auto reports = sweep(sc);
  std::ostringstream os;
  os << file_header(cfg) << "protocol,epsilon,logical_error_probability,seed\n";
  os.precision(17);
  for (const auto& r : reports) {
    os << protocol_name(r.protocol) << ',' << r.epsilon << ','
       << r.logical_error_probability << ',' << r.seed << '\n';
  }
  write_text(csv_path, os.str());
  return json{{"tool", tool_version()},
              {"config", hash_hex(config_hash(cfg))},
              {"rows", reports.size()},
              {"csv_path", csv_path}}
      .dump();
}

std::string run_qec_verify() {
  const auto checks = verify_exactness();
  bool all = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"fidelity", c.fidelity}});
  }
  return json{{"tool", tool_version()}, {"all_pass", all}, {"checks", arr}}.dump();
}

std::string run_index_build(const std::string& config_json) {
  const json cfg = json::parse(config_json);
  Schema s(cfg);
  check_version(s);
  const VariantMode mode = parse_mode(s.require("mode"));
  const auto gate_seed = as<std::uint64_t>(s.require("gate_seed"), "gate_seed");
  const int half_depth = as<int>(s.require("half_depth"), "half_depth");
  if (half_depth < 1) throw ConfigError("half_depth: must be >= 1");
  CompileOptions opts = parse_compile_options(s);
  const std::string snapshot_path =
      as<std::string>(s.require("snapshot_path"), "snapshot_path");
  s.finish();

  const GateSet gs = make_variants(haar_random(4, gate_seed), mode);
  const double t0 = now_seconds();
  NnIndex index = NnIndex::build(gs, half_depth, opts.index, opts.budget_bytes);
  index.save_snapshot(snapshot_path);
  return json{{"tool", tool_version()},
              {"config", hash_hex(config_hash(cfg))},
              {"points", index.size()},
              {"seconds", now_seconds() - t0},
              {"snapshot_path", snapshot_path}}
      .dump();
}

}  // namespace qcompile::experiments
