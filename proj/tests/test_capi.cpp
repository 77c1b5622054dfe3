// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>

#include "qcompile.h"

TEST_CASE("version string") {
  CHECK(std::string(qc_version()).rfind("qcompile", 0) == 0);
}

TEST_CASE("named unitaries and metrics") {
  qc_unitary* i4 = nullptr;
  qc_unitary* sw = nullptr;
  REQUIRE(qc_unitary_named("I4", &i4) == QC_OK);
  REQUIRE(qc_unitary_named("SWAP", &sw) == QC_OK);
  int dim = 0;
  CHECK(qc_unitary_dim(i4, &dim) == QC_OK);
  CHECK(dim == 4);
  double d = 0;
  CHECK(qc_frobenius_distance(i4, sw, &d) == QC_OK);
  CHECK(d == doctest::Approx(2.0));
  CHECK(qc_infidelity(i4, sw, &d) == QC_OK);
  CHECK(d == doctest::Approx(0.5));
  qc_unitary_free(i4);
  qc_unitary_free(sw);
}

TEST_CASE("error paths set status and message") {
  qc_unitary* u = nullptr;
  CHECK(qc_unitary_named("BOGUS", &u) == QC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(qc_last_error()).find("BOGUS") != std::string::npos);
  CHECK(qc_unitary_named(nullptr, &u) == QC_ERR_INVALID_ARGUMENT);

  qc_unitary* i2 = nullptr;
  qc_unitary* i4 = nullptr;
  REQUIRE(qc_unitary_named("I2", &i2) == QC_OK);
  REQUIRE(qc_unitary_named("I4", &i4) == QC_OK);
  double d = 0;
  CHECK(qc_infidelity(i2, i4, &d) == QC_ERR_DIMENSION_MISMATCH);
  qc_unitary_free(i2);
  qc_unitary_free(i4);

  CHECK(qc_unitary_from_json("[[1,0],[0,1]]", &u) == QC_ERR_INVALID_ARGUMENT);
  CHECK(qc_unitary_from_json("plainly not json", &u) == QC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("haar handles and json round trip") {
  qc_unitary* u = nullptr;
  REQUIRE(qc_unitary_haar(4, 17, &u) == QC_OK);
  char* text = nullptr;
  REQUIRE(qc_unitary_to_json(u, &text) == QC_OK);
  qc_unitary* back = nullptr;
  REQUIRE(qc_unitary_from_json(text, &back) == QC_OK);
  double d = 1;
  CHECK(qc_infidelity(u, back, &d) == QC_OK);
  CHECK(d == doctest::Approx(0.0));
  qc_string_free(text);
  qc_unitary_free(u);
  qc_unitary_free(back);
  CHECK(qc_unitary_haar(1, 0, &u) == QC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("depth law helpers") {
  double slope = 0, vol = 0;
  CHECK(qc_min_depth_slope(4, 4, &slope) == QC_OK);
  CHECK(slope == doctest::Approx(12.46).epsilon(1e-3));
  CHECK(qc_min_depth_slope(4, 2, &slope) == QC_OK);
  CHECK(slope == doctest::Approx(24.92).epsilon(1e-3));
  CHECK(qc_volume_lower_bound(4, 4, 0.1, &vol) == QC_OK);
  CHECK(vol == doctest::Approx(24.91).epsilon(1e-3));
}

TEST_CASE("compile runner round trip") {
  const char* cfg = R"({
    "version": 1, "target": "cnot", "mode": "four", "gate_seed": 1,
    "half_depth": 2, "budget_bytes": 1073741824, "threads": 1,
    "index": {"mode": "exact"}
  })";
  char* summary = nullptr;
  REQUIRE(qc_run_compile(cfg, &summary) == QC_OK);
  const std::string s = summary;
  CHECK(s.find("\"infidelity\"") != std::string::npos);
  CHECK(s.find("\"word\"") != std::string::npos);
  qc_string_free(summary);
}

TEST_CASE("configs are strictly validated") {
  char* out = nullptr;
  // unknown field
  CHECK(qc_run_compile(
            R"({"version":1,"target":"cnot","mode":"four","gate_seed":1,
                "half_depth":2,"bogus":1})",
            &out) == QC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(qc_last_error()).find("bogus") != std::string::npos);
  // missing required field
  CHECK(qc_run_compile(R"({"version":1,"target":"cnot","mode":"four"})", &out) ==
        QC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(qc_last_error()).find("gate_seed") != std::string::npos);
  // wrong version
  CHECK(qc_run_compile(
            R"({"version":2,"target":"cnot","mode":"four","gate_seed":1,
                "half_depth":2})",
            &out) == QC_ERR_INVALID_ARGUMENT);
  // malformed document
  CHECK(qc_run_compile("{", &out) == QC_ERR_INVALID_ARGUMENT);
  CHECK(qc_run_compile(nullptr, &out) == QC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("budget violation maps to the resource status") {
  const char* cfg = R"({
    "version": 1, "target": "cnot", "mode": "four", "gate_seed": 1,
    "half_depth": 6, "budget_bytes": 1024
  })";
  char* out = nullptr;
  CHECK(qc_run_compile(cfg, &out) == QC_ERR_RESOURCE);
}

TEST_CASE("qec verify reports all checks passing") {
  char* report = nullptr;
  int all_pass = 0;
  REQUIRE(qc_qec_verify(&report, &all_pass) == QC_OK);
  CHECK(all_pass == 1);
  CHECK(std::string(report).find("\"checks\"") != std::string::npos);
  qc_string_free(report);
}

TEST_CASE("qec sweep runner writes csv") {
  const std::string csv = "/tmp/qc_capi_sweep.csv";
  const std::string cfg = std::string(R"({
    "version": 1, "protocols": ["no_qec"], "epsilons": [0.001],
    "samples_per_point": 2, "seed": 3, "csv_path": ")") + csv + "\"}";
  char* out = nullptr;
  REQUIRE(qc_run_qec_sweep(cfg.c_str(), &out) == QC_OK);
  qc_string_free(out);
  FILE* f = std::fopen(csv.c_str(), "r");
  REQUIRE(f != nullptr);
  char line[256] = {0};
  CHECK(std::fgets(line, sizeof line, f) != nullptr);
  CHECK(std::strstr(line, "qcompile") != nullptr);  // versioned header
  std::fclose(f);
  std::remove(csv.c_str());
}
