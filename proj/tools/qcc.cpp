// SPDX-License-Identifier: Apache-2.0
//
// Command line front end; all work happens behind the qcompile C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcompile.h"

namespace {

using nlohmann::json;

int status_to_exit(qc_status st) {
  switch (st) {
    case QC_OK:
      return 0;
    case QC_ERR_INVALID_ARGUMENT:
    case QC_ERR_DIMENSION_MISMATCH:
      return 2;
    case QC_ERR_RESOURCE:
      return 3;
    case QC_ERR_IO:
      return 4;
    default:
      return 1;
  }
}

int run_and_print(qc_status (*fn)(const char*, char**), const json& cfg) {
  char* summary = nullptr;
  const qc_status st = fn(cfg.dump().c_str(), &summary);
  if (st != QC_OK) {
    std::cerr << "error: " << qc_last_error() << "\n";
    return status_to_exit(st);
  }
  std::cout << summary << "\n";
  qc_string_free(summary);
  return 0;
}

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  json cfg;
  is >> cfg;
  return cfg;
}

json target_field(const std::string& target) {
  if (target == "cnot" || target == "swap") return target;
  return json{{"file", target}};
}

struct IndexFlags {
  std::string mode = "exact";
  int neighbor_degree = 16;
  int build_beam = 200;
  int query_beam = 64;
  int rerank_k = 8;
  std::uint64_t build_seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--index", mode, "Index mode: exact|approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    cmd->add_option("--index-degree", neighbor_degree, "Graph degree bound");
    cmd->add_option("--index-build-beam", build_beam, "Build beam width");
    cmd->add_option("--index-query-beam", query_beam, "Query beam width");
    cmd->add_option("--index-rerank-k", rerank_k, "Rerank candidate count");
    cmd->add_option("--index-build-seed", build_seed, "Graph build seed");
  }
  json to_json() const {
    return json{{"mode", mode},
                {"neighbor_degree", neighbor_degree},
                {"build_beam", build_beam},
                {"query_beam", query_beam},
                {"rerank_k", rerank_k},
                {"build_seed", build_seed}};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(qc_version()) +
               " - gate compilation and measurement-free QEC experiments"};
  app.require_subcommand(1);

  // compile
  auto* compile = app.add_subcommand("compile", "Meet-in-the-middle compilation");
  std::string target = "cnot", mode = "four", output, snapshot;
  std::uint64_t seed = 0, budget = 8ULL << 30;
  int half_depth = 0, threads = 1;
  IndexFlags index_flags;
  compile->add_option("--target", target, "cnot, swap, or a matrix JSON file");
  compile->add_option("--mode", mode, "Variant set: four|two")
      ->check(CLI::IsMember({"four", "two"}));
  compile->add_option("--half-depth", half_depth, "Half depth h (total 2h)")
      ->required();
  compile->add_option("--seed", seed, "Gate set seed");
  compile->add_option("--budget-bytes", budget, "Memory budget in bytes");
  compile->add_option("--threads", threads, "Worker threads");
  compile->add_option("--output", output, "Result JSON path");
  compile->add_option("--snapshot", snapshot, "Load a prebuilt index snapshot");
  index_flags.attach(compile);

  // scaling / mesh / qec sweep via config files
  std::string scaling_config, mesh_config, qec_config;
  auto* scaling = app.add_subcommand("scaling", "Depth-infidelity scaling sweep");
  scaling->add_option("--config", scaling_config, "JSON config")->required();
  auto* mesh = app.add_subcommand("mesh", "Mesh-size estimate");
  mesh->add_option("--config", mesh_config, "JSON config")->required();
  auto* qec = app.add_subcommand("qec", "Coherent-error QEC simulation");
  bool qec_verify = false;
  qec->add_flag("--verify", qec_verify, "Run the deterministic exactness suite");
  qec->add_option("--config", qec_config, "JSON sweep config");

  // index-build
  auto* ib = app.add_subcommand("index-build", "Build and persist an index snapshot");
  std::string ib_mode = "four", ib_snapshot;
  std::uint64_t ib_seed = 0, ib_budget = 8ULL << 30;
  int ib_half_depth = 0;
  IndexFlags ib_index;
  ib_index.mode = "approx";
  ib->add_option("--mode", ib_mode, "Variant set: four|two")
      ->check(CLI::IsMember({"four", "two"}));
  ib->add_option("--seed", ib_seed, "Gate set seed");
  ib->add_option("--half-depth", ib_half_depth, "Half depth")->required();
  ib->add_option("--snapshot", ib_snapshot, "Snapshot output path")->required();
  ib->add_option("--budget-bytes", ib_budget, "Memory budget in bytes");
  ib_index.attach(ib);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) {
      json cfg{{"version", 1},
               {"target", target_field(target)},
               {"mode", mode},
               {"gate_seed", seed},
               {"half_depth", half_depth},
               {"budget_bytes", budget},
               {"threads", threads},
               {"index", index_flags.to_json()}};
      if (!output.empty()) cfg["output_path"] = output;
      if (!snapshot.empty()) cfg["snapshot_path"] = snapshot;
      return run_and_print(qc_run_compile, cfg);
    }
    if (scaling->parsed()) {
      return run_and_print(qc_run_scaling, load_config(scaling_config));
    }
    if (mesh->parsed()) {
      return run_and_print(qc_run_mesh, load_config(mesh_config));
    }
    if (qec->parsed()) {
      if (qec_verify) {
        char* report = nullptr;
        int all_pass = 0;
        const qc_status st = qc_qec_verify(&report, &all_pass);
        if (st != QC_OK) {
          std::cerr << "error: " << qc_last_error() << "\n";
          return status_to_exit(st);
        }
        const json rep = json::parse(report);
        qc_string_free(report);
        for (const auto& check : rep["checks"]) {
          std::cout << (check["pass"].get<bool>() ? "PASS " : "FAIL ")
                    << check["name"].get<std::string>()
                    << " fidelity=" << check["fidelity"].get<double>() << "\n";
        }
        return all_pass ? 0 : 1;
      }
      if (qec_config.empty()) {
        std::cerr << "error: qec needs --config or --verify\n";
        return 2;
      }
      return run_and_print(qc_run_qec_sweep, load_config(qec_config));
    }
    if (ib->parsed()) {
      json cfg{{"version", 1},
               {"mode", ib_mode},
               {"gate_seed", ib_seed},
               {"half_depth", ib_half_depth},
               {"snapshot_path", ib_snapshot},
               {"budget_bytes", ib_budget},
               {"index", ib_index.to_json()}};
      return run_and_print(qc_run_index_build, cfg);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
