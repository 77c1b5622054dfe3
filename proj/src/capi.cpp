// SPDX-License-Identifier: Apache-2.0
#include "qcompile.h"

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "qcompile/experiments.hpp"
#include "qcompile/unitary.hpp"
#include "qcompile/wordspace.hpp"

using namespace qcompile;

struct qc_unitary {
  Unitary u;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qc_status fail(qc_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
qc_status guarded(Fn&& fn) {
  try {
    fn();
    return QC_OK;
  } catch (const DimensionMismatch& e) {
    return fail(QC_ERR_DIMENSION_MISMATCH, e.what());
  } catch (const ResourceError& e) {
    return fail(QC_ERR_RESOURCE, e.what());
  } catch (const experiments::ConfigError& e) {
    return fail(QC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(QC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(QC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(QC_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    // file-open failures surface as runtime_error with a path in the message
    const std::string msg = e.what();
    if (msg.find("cannot open") != std::string::npos ||
        msg.find("truncated") != std::string::npos) {
      return fail(QC_ERR_IO, e.what());
    }
    return fail(QC_ERR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(QC_ERR_INTERNAL, e.what());
  }
}

qc_status require(bool cond, const char* what) {
  return cond ? QC_OK : fail(QC_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* qc_version(void) { return experiments::tool_version(); }

const char* qc_last_error(void) { return g_last_error.c_str(); }

void qc_string_free(char* s) { delete[] s; }

qc_status qc_unitary_named(const char* name, qc_unitary** out) {
  if (auto st = require(name && out, "null argument")) return st;
  return guarded([&] {
    const std::string n = name;
    Unitary u = [&]() -> Unitary {
      if (n == "I2") return Unitary::identity(2);
      if (n == "I4") return Unitary::identity(4);
      if (n == "SWAP") return Unitary::swap_gate();
      if (n == "CNOT") return Unitary::cnot();
      if (n == "H") return Unitary::hadamard();
      if (n == "X") return Unitary::pauli_x();
      if (n == "Y") return Unitary::pauli_y();
      if (n == "Z") return Unitary::pauli_z();
      if (n == "T") return Unitary::t_gate();
      throw std::invalid_argument("unknown gate name: " + n);
    }();
    *out = new qc_unitary{std::move(u)};
  });
}

qc_status qc_unitary_haar(int dim, uint64_t seed, qc_unitary** out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return guarded([&] { *out = new qc_unitary{haar_random(dim, seed)}; });
}

qc_status qc_unitary_from_json(const char* json, qc_unitary** out) {
  if (auto st = require(json && out, "null argument")) return st;
  return guarded([&] { *out = new qc_unitary{unitary_from_json(json)}; });
}

qc_status qc_unitary_to_json(const qc_unitary* u, char** out_json) {
  if (auto st = require(u && out_json, "null argument")) return st;
  return guarded([&] { *out_json = dup_string(unitary_to_json(u->u)); });
}

void qc_unitary_free(qc_unitary* u) { delete u; }

qc_status qc_unitary_dim(const qc_unitary* u, int* out_dim) {
  if (auto st = require(u && out_dim, "null argument")) return st;
  *out_dim = u->u.dim();
  return QC_OK;
}

qc_status qc_frobenius_distance(const qc_unitary* a, const qc_unitary* b,
                                double* out) {
  if (auto st = require(a && b && out, "null argument")) return st;
  return guarded([&] { *out = frobenius_distance(a->u, b->u); });
}

qc_status qc_infidelity(const qc_unitary* a, const qc_unitary* b, double* out) {
  if (auto st = require(a && b && out, "null argument")) return st;
  return guarded([&] { *out = infidelity(a->u, b->u); });
}

qc_status qc_min_depth_slope(int dim, int set_size, double* out_slope) {
  if (auto st = require(out_slope != nullptr, "null argument")) return st;
  return guarded(
      [&] { *out_slope = theoretical_min_depth(dim, set_size).slope; });
}

qc_status qc_volume_lower_bound(int dim, int set_size, double eps_f,
                                double* out) {
  if (auto st = require(out != nullptr, "null argument")) return st;
  return guarded([&] { *out = volume_lower_bound(dim, set_size, eps_f); });
}

qc_status qc_run_compile(const char* config_json, char** out_summary_json) {
  if (auto st = require(config_json && out_summary_json, "null argument"))
    return st;
  return guarded([&] {
    *out_summary_json = dup_string(experiments::run_compile(config_json));
  });
}

qc_status qc_run_scaling(const char* config_json, char** out_summary_json) {
  if (auto st = require(config_json && out_summary_json, "null argument"))
    return st;
  return guarded([&] {
    *out_summary_json = dup_string(experiments::run_scaling(config_json));
  });
}

qc_status qc_run_mesh(const char* config_json, char** out_summary_json) {
  if (auto st = require(config_json && out_summary_json, "null argument"))
    return st;
  return guarded([&] {
    *out_summary_json = dup_string(experiments::run_mesh(config_json));
  });
}

qc_status qc_run_qec_sweep(const char* config_json, char** out_summary_json) {
  if (auto st = require(config_json && out_summary_json, "null argument"))
    return st;
  return guarded([&] {
    *out_summary_json = dup_string(experiments::run_qec_sweep(config_json));
  });
}

qc_status qc_run_index_build(const char* config_json, char** out_summary_json) {
  if (auto st = require(config_json && out_summary_json, "null argument"))
    return st;
  return guarded([&] {
    *out_summary_json = dup_string(experiments::run_index_build(config_json));
  });
}

qc_status qc_qec_verify(char** out_report_json, int* out_all_pass) {
  if (auto st = require(out_report_json && out_all_pass, "null argument"))
    return st;
  return guarded([&] {
    const std::string report = experiments::run_qec_verify();
    *out_all_pass = nlohmann::json::parse(report)["all_pass"].get<bool>() ? 1 : 0;
    *out_report_json = dup_string(report);
  });
}

}  // extern "C"
