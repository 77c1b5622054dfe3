// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcompile/unitary.hpp"
#include "qcompile/wordspace.hpp"

namespace qcompile {

/// Phase-canonical embedding: interleaved [re, im] of the det-1 representative,
/// row-major. 2N^2 reals; squared Euclidean distance between embeddings equals
/// the squared Frobenius distance between the representatives.
std::vector<double> vectorize(const Unitary& u);

enum class IndexMode { exact_scan, approximate_graph };

struct IndexParams {
  IndexMode mode = IndexMode::exact_scan;
  int neighbor_degree = 16;  // graph degree bound M
  int build_beam = 200;
  int query_beam = 64;
  int rerank_k = 8;
  std::uint64_t build_seed = 0;
};

/// Searchable half-depth product set. Immutable after build; queries are
/// const and safe to issue from any number of threads.
///
/// exact_scan evaluates the infidelity of every indexed matrix in double
/// precision, so its top hit is the true infidelity minimizer. The graph mode
/// searches the float32 embedding with one sub-query per residual N-th root
/// of unity phase, then reranks the merged candidates by exact infidelity.
class NnIndex {
 public:
  struct Hit {
    std::uint64_t word_id = 0;
    double infid = 0;
  };

  /// Enumerates |U|^half_depth products (word_id = lexicographic position)
  /// and indexes them.
  static NnIndex build(const GateSet& gs, int half_depth, const IndexParams& p,
                       std::uint64_t budget_bytes);

  /// Index over an explicit matrix list (word_id = list position).
  static NnIndex build_from_matrices(std::vector<Matrix> mats, int dim,
                                     const IndexParams& p,
                                     std::uint64_t budget_bytes);

  std::vector<Hit> query_nearest(const Unitary& target, int k) const;

  std::uint64_t size() const { return mats_.size(); }
  const Matrix& matrix_at(std::uint64_t id) const { return mats_[id]; }
  const IndexParams& params() const { return params_; }

  void save_snapshot(const std::string& path) const;
  /// Rebuilds from a snapshot; the gate set and half depth must match the
  /// values recorded at save time.
  static NnIndex load_snapshot(const std::string& path, const GateSet& gs,
                               int half_depth);

 private:
  NnIndex() = default;
  void build_graph();
  void insert_node(std::uint32_t id);
  std::vector<std::uint32_t> search_layer(const float* q, std::uint32_t entry,
                                          int ef, int level) const;
  std::vector<std::uint32_t> select_neighbors(
      const float* q, const std::vector<std::uint32_t>& cands, int m) const;
  float dist2(const float* q, std::uint32_t id) const;
  std::vector<Hit> query_exact(const Matrix& target, int k) const;
  std::vector<Hit> query_graph(const Unitary& target, int k) const;

  int dim_ = 0;
  IndexParams params_;
  std::vector<Matrix> mats_;
  std::vector<float> vecs_;  // count * 2*dim^2, graph mode only
  int vec_len_ = 0;

  // navigable small world graph
  std::vector<int> levels_;
  std::vector<std::vector<std::vector<std::uint32_t>>> neighbors_;  // [level][node]
  std::uint32_t entry_point_ = 0;
  int max_level_ = -1;

  // snapshot metadata
  std::uint64_t set_hash_ = 0;
  int set_size_ = 0;
  int half_depth_ = -1;
};

}  // namespace qcompile
