// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcompile/nn_index.hpp"
#include "qcompile/unitary.hpp"
#include "qcompile/wordspace.hpp"

namespace qcompile {

struct CompileStats {
  double index_seconds = 0;
  double query_seconds = 0;
  std::uint64_t points = 0;
  std::uint64_t candidates_examined = 0;
};

struct CompilationResult {
  GateWord word;
  double infid = 0;
  double frobenius = 0;
  int half_depth = 0;
  CompileStats stats;
};

struct CompileOptions {
  IndexParams index;
  std::uint64_t budget_bytes = 8ULL << 30;
  int threads = 1;
  /// Optional: stop the query loop once a candidate at or below this
  /// infidelity is found. Off by default so scaling statistics are unbiased.
  std::optional<double> early_exit_infidelity;
};

/// Meet-in-the-middle search: enumerate the half-depth set S, index it, and
/// for each X in S look up the nearest match to target * X† in S. With the
/// exact_scan index the result is the global optimum over all depth-2h words.
CompilationResult compile_mitm(const GateSet& gs, const Unitary& target,
                               int half_depth, const CompileOptions& opts);

/// Same search against a prebuilt index (e.g. loaded from a snapshot).
CompilationResult compile_mitm(const GateSet& gs, const Unitary& target,
                               int half_depth, const NnIndex& index,
                               const CompileOptions& opts);

/// Exhaustive O(|U|^depth) oracle. Guarded to <= 1e7 products.
CompilationResult compile_brute(const GateSet& gs, const Unitary& target,
                                int depth);

struct ScalingRow {
  std::uint64_t gate_set_seed = 0;
  VariantMode mode = VariantMode::four;
  int total_depth = 0;
  double best_infidelity = 0;
  double best_frobenius = 0;
  double wall_seconds = 0;
  std::uint64_t points = 0;
  IndexMode index_mode = IndexMode::exact_scan;
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
};

struct ScalingOutcome {
  std::vector<ScalingRow> rows;
  /// Least squares of total_depth against log10(1/median infidelity);
  /// absent when fewer than two depths were measured.
  std::optional<LinearFit> fit;
};

/// One compile per (seed, depth); the fit uses per-depth medians.
/// On a compile failure the rows produced so far are returned inside the
/// exception-free partial result via the `partial` out-parameter if given.
ScalingOutcome scaling_experiment(VariantMode mode, const Unitary& target,
                                  const std::vector<std::uint64_t>& seeds,
                                  const std::vector<int>& depths,
                                  const CompileOptions& opts,
                                  std::vector<ScalingRow>* partial = nullptr);

struct MeshEstimate {
  double max_infidelity = 0;
  double max_frobenius = 0;
};

/// Monte-Carlo stand-in for the mesh size: max over sampled Haar targets of
/// the best compilation error. A lower bound on the true worst case.
MeshEstimate mesh_size_estimate(const GateSet& gs, int half_depth,
                                int n_targets, std::uint64_t target_seed,
                                const CompileOptions& opts);

/// Fit y = a*x + b by least squares.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qcompile
