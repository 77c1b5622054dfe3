// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcompile/unitary.hpp"

namespace qcompile {

/// A depth-d product encoded as variant indices in application order:
/// letter 0 acts first, so the matrix product is U_{l[d-1]} ... U_{l[1]} U_{l[0]}.
struct GateWord {
  std::vector<std::uint8_t> letters;

  int depth() const { return static_cast<int>(letters.size()); }
  std::string to_string() const;  // base-|U| digit string, e.g. "0312"
  static GateWord from_string(const std::string& s);

  bool operator==(const GateWord& o) const { return letters == o.letters; }
  bool operator<(const GateWord& o) const { return letters < o.letters; }
};

/// Position of a word within the lexicographic enumeration at its depth.
std::uint64_t word_to_id(const GateWord& w, int set_size);
GateWord word_from_id(std::uint64_t id, int depth, int set_size);

Unitary evaluate_word(const GateSet& gs, const GateWord& w);

/// Predicted footprint of materializing one enumeration (per-point matrix,
/// embedding vector and word id). Used for budget checks before allocation.
std::uint64_t enumeration_footprint_bytes(int dim, int set_size, int depth);

/// Number of products at the given depth: |U|^depth.
std::uint64_t enumeration_count(int set_size, int depth);

/// Visits all |U|^depth (word, product) pairs in lexicographic word order.
/// Depth-first with prefix reuse: each visit costs one N x N multiply.
/// Throws ResourceError before any work if the footprint exceeds the budget.
void enumerate_products(
    const GateSet& gs, int depth, std::uint64_t budget_bytes,
    const std::function<void(const GateWord&, const Matrix&)>& visit);

/// Subtree restricted to one leading letter; the |U| subtrees partition the
/// full enumeration and may run on independent workers.
void enumerate_subtree(
    const GateSet& gs, int depth, std::uint8_t first_letter,
    const std::function<void(const GateWord&, const Matrix&)>& visit);

enum class Metric { frobenius, infid };

/// Closed-form depth law: depth ~ slope * log10(1/eps) + offset. The additive
/// offset is never synthesized; it stays unset unless fitted from data.
struct DepthEstimate {
  double slope = 0;
  std::optional<double> offset;  // unknown unless fitted
  Metric metric = Metric::infid;

  double depth_for(double eps) const;  // slope-only estimate
};

/// Infidelity depth law slope (N^2-1) / (2 log10 |U|).
DepthEstimate theoretical_min_depth(int n, int set_size);

/// Volume covering bound (N^2-1) * log_{|U|}(1/eps_F), additive constant omitted.
double volume_lower_bound(int n, int set_size, double eps_f);

}  // namespace qcompile
