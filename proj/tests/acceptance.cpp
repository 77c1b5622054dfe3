// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; the exit
// status is nonzero if any requested criterion fails. Select criteria by
// number on the command line; no arguments runs all of them.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qcompile/mitm.hpp"
#include "qcompile/nn_index.hpp"
#include "qcompile/qec.hpp"
#include "qcompile/unitary.hpp"
#include "qcompile/wordspace.hpp"

using namespace qcompile;

namespace {

CompileOptions exact_opts() {
  CompileOptions o;
  o.index.mode = IndexMode::exact_scan;
  return o;
}

// 1. Infidelity is bounded by the squared Frobenius distance over 1e5 pairs.
bool criterion1(std::string& detail) {
  const int pairs = 100000;
  int violations = 0;
  double worst = -1e300;
  for (int i = 0; i < pairs; ++i) {
    const Unitary a = haar_random(4, 2 * i);
    const Unitary b = haar_random(4, 2 * i + 1);
    const double ef = frobenius_distance(a, b);
    const double gap = infidelity(a, b) - ef * ef / (2.0 * 4.0);
    worst = std::max(worst, gap);
    if (gap > 1e-12) ++violations;
  }
  detail = "pairs=" + std::to_string(pairs) +
           " violations=" + std::to_string(violations) +
           " max_excess=" + std::to_string(worst);
  return violations == 0;
}

// 2. Meet-in-the-middle with the exact index equals the brute-force oracle.
bool criterion2(std::string& detail) {
  const Unitary target = Unitary::cnot();
  int checked = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GateSet gs = make_variants(haar_random(4, seed), VariantMode::four);
    for (int total : {2, 4, 6}) {
      const double m = compile_mitm(gs, target, total / 2, exact_opts()).infid;
      const double b = compile_brute(gs, target, total).infid;
      worst = std::max(worst, std::abs(m - b));
      ++checked;
      if (std::abs(m - b) > 1e-12) {
        detail = "mismatch at seed " + std::to_string(seed) + " depth " +
                 std::to_string(total);
        return false;
      }
    }
  }
  detail = "cases=" + std::to_string(checked) +
           " max_gap=" + std::to_string(worst);
  return true;
}

bool slope_criterion(VariantMode mode, const std::vector<int>& depths,
                     double lo, double hi, std::string& detail) {
  std::vector<std::uint64_t> seeds(20);
  for (int i = 0; i < 20; ++i) seeds[i] = 1 + i;
  const ScalingOutcome out = scaling_experiment(mode, Unitary::cnot(), seeds,
                                                depths, exact_opts());
  if (!out.fit) {
    detail = "no fit";
    return false;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "slope=%.3f window=[%.1f, %.1f]",
                out.fit->slope, lo, hi);
  detail = buf;
  return out.fit->slope >= lo && out.fit->slope <= hi;
}

// 3. Four-variant depth scaling reproduces the 12.46 slope within 25%.
bool criterion3(std::string& detail) {
  return slope_criterion(VariantMode::four, {6, 8, 10, 12, 14}, 9.3, 15.6,
                         detail);
}

// 4. Two-variant depth scaling reproduces the 24.92 slope within 30%.
bool criterion4(std::string& detail) {
  return slope_criterion(VariantMode::two, {8, 12, 16, 20}, 17.4, 32.4, detail);
}

// 5. Approximate-graph recall@1 >= 0.95 against the exact scan on 1e5 points.
bool criterion5(std::string& detail) {
  const std::uint64_t n_points = 100000;
  const int n_queries = 1000;
  const GateSet gs = make_variants(haar_random(4, 12345), VariantMode::four);
  std::vector<Matrix> mats;
  mats.reserve(n_points);
  enumerate_products(gs, 9, 8ULL << 30, [&](const GateWord&, const Matrix& m) {
    if (mats.size() < n_points) mats.push_back(m);
  });
  IndexParams exact, graph;
  exact.mode = IndexMode::exact_scan;
  graph.mode = IndexMode::approximate_graph;
  std::vector<Matrix> mats_copy = mats;
  const NnIndex ei =
      NnIndex::build_from_matrices(std::move(mats), 4, exact, 8ULL << 30);
  const NnIndex gi =
      NnIndex::build_from_matrices(std::move(mats_copy), 4, graph, 8ULL << 30);
  int hits = 0;
  for (int q = 0; q < n_queries; ++q) {
    const Unitary target = haar_random(4, 700000 + q);
    const auto te = ei.query_nearest(target, 1);
    const auto tg = gi.query_nearest(target, 1);
    if (te[0].word_id == tg[0].word_id ||
        std::abs(te[0].infid - tg[0].infid) <= 1e-12) {
      ++hits;
    }
  }
  const double recall = static_cast<double>(hits) / n_queries;
  char buf[64];
  std::snprintf(buf, sizeof buf, "recall@1=%.4f (need >= 0.95)", recall);
  detail = buf;
  return recall >= 0.95;
}

// 6. Closed-form depth-law slopes.
bool criterion6(std::string& detail) {
  const double four = theoretical_min_depth(4, 4).slope;
  const double two = theoretical_min_depth(4, 2).slope;
  char buf[96];
  std::snprintf(buf, sizeof buf, "slope(4)=%.4f slope(2)=%.4f", four, two);
  detail = buf;
  return std::abs(four - 12.46) <= 0.01 && std::abs(two - 24.92) <= 0.01;
}

// 7. Repetition code corrects every single bit flip exactly.
bool criterion7(std::string& detail) {
  const Circuit c = build_repetition_mfqec();
  double min_fid = 1;
  for (int flip = -1; flip < 3; ++flip) {
    StateVector s = StateVector::basis(9, 0);
    StateVector ideal = StateVector::basis(3, 0);
    if (flip >= 0) apply_op(s, CircuitOp::x(flip));
    apply_circuit(s, c);
    const double fid = 1.0 - logical_error_probability(s, ideal);
    const double floor = (flip < 0) ? 1.0 - 1e-12 : 1.0 - 1e-10;
    min_fid = std::min(min_fid, fid);
    if (fid < floor) {
      detail = "fidelity " + std::to_string(fid) + " at flip " +
               std::to_string(flip);
      return false;
    }
  }
  detail = "min_fidelity=" + std::to_string(min_fid);
  return true;
}

// 8. Shor code: 27 single-Pauli corrections, 21 qubits, 12 multi-control gates.
bool criterion8(std::string& detail) {
  const Circuit c = build_shor_mfqec();
  if (c.n_qubits != 21) {
    detail = "qubits=" + std::to_string(c.n_qubits);
    return false;
  }
  if (c.multi_control_count() != 12) {
    detail = "multi_controls=" + std::to_string(c.multi_control_count());
    return false;
  }
  const auto checks = verify_exactness();
  int pauli_checks = 0;
  double min_fid = 1;
  for (const auto& ck : checks) {
    if (ck.name.rfind("shor", 0) != 0) continue;
    ++pauli_checks;
    min_fid = std::min(min_fid, ck.fidelity);
    if (!ck.pass) {
      detail = "failed: " + ck.name;
      return false;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "paulis=%d qubits=21 multi_controls=12 min_fid=%.12f",
                pauli_checks, min_fid);
  detail = buf;
  return pauli_checks == 27;
}

// 9. Coherent-error suppression: mf_qec residual and envelope slopes.
bool criterion9(std::string& detail) {
  SweepConfig cfg;
  cfg.protocols = {Protocol::no_qec, Protocol::mf_qec};
  cfg.grid = {{1e-4, 1e-4}, {1e-3, 1e-3}, {1e-2, 1e-2}};
  cfg.samples_per_point = 300;
  cfg.seed = 2026;
  const auto reports = sweep(cfg);
  std::map<std::pair<Protocol, double>, double> envelope;
  for (const auto& r : reports) {
    auto& mx = envelope[{r.protocol, r.epsilon}];
    mx = std::max(mx, r.logical_error_probability);
  }
  auto env_slope = [&](Protocol p) {
    std::vector<double> xs, ys;
    for (double eps : {1e-4, 1e-3, 1e-2}) {
      xs.push_back(std::log10(eps));
      ys.push_back(std::log10(std::max(envelope[{p, eps}], 1e-300)));
    }
    return least_squares(xs, ys).slope;
  };
  const double mf_at_1e3 = envelope[{Protocol::mf_qec, 1e-3}];
  const double s_mf = env_slope(Protocol::mf_qec);
  const double s_no = env_slope(Protocol::no_qec);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max_mf@1e-3=%.3g slope_mf=%.2f slope_no=%.2f", mf_at_1e3,
                s_mf, s_no);
  detail = buf;
  return mf_at_1e3 <= 1e-4 && s_mf >= 1.7 && s_mf <= 2.3 && s_no >= 0.8 &&
         s_no <= 1.2;
}

const char* kNames[9] = {
    "metric inequality (1e5 Haar pairs)",
    "meet-in-the-middle equals brute force",
    "four-variant scaling slope",
    "two-variant scaling slope",
    "approximate index recall@1",
    "closed-form depth-law slopes",
    "repetition-code exactness",
    "shor-code exactness and gate counts",
    "coherent-error suppression",
};

}  // namespace

int main(int argc, char** argv) {
  using Fn = bool (*)(std::string&);
  const Fn criteria[9] = {criterion1, criterion2, criterion3,
                          criterion4, criterion5, criterion6,
                          criterion7, criterion8, criterion9};
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "usage: %s [criterion 1-9]...\n", argv[0]);
      return 2;
    }
    wanted.insert(n);
  }
  if (wanted.empty()) {
    for (int n = 1; n <= 9; ++n) wanted.insert(n);
  }
  bool all_pass = true;
  for (int n : wanted) {
    std::string detail;
    const bool pass = criteria[n - 1](detail);
    all_pass = all_pass && pass;
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", n,
                kNames[n - 1], detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
