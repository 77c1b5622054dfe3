// SPDX-License-Identifier: Apache-2.0
#include "qcompile/nn_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <queue>

#include "qcompile/rng.hpp"

namespace qcompile {

std::vector<double> vectorize(const Unitary& u) {
  const Matrix r = canonical_phase(u).representative.mat();
  const int n = u.dim();
  std::vector<double> v;
  v.reserve(2 * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      v.push_back(r(i, j).real());
      v.push_back(r(i, j).imag());
    }
  }
  return v;
}

namespace {

std::vector<float> flatten_f32(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<float> v;
  v.reserve(2 * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      v.push_back(static_cast<float>(m(i, j).real()));
      v.push_back(static_cast<float>(m(i, j).imag()));
    }
  }
  return v;
}

// |Tr(a† b)| in double precision.
double trace_modulus(const Matrix& a, const Matrix& b) {
  Complex tr(0, 0);
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tr += std::conj(a(j, i)) * b(j, i);
    }
  }
  return std::abs(tr);
}

struct HitOrder {
  bool operator()(const NnIndex::Hit& a, const NnIndex::Hit& b) const {
    if (a.infid != b.infid) return a.infid < b.infid;
    return a.word_id < b.word_id;  // lexicographic word order at equal depth
  }
};

void push_topk(std::vector<NnIndex::Hit>& heap, const NnIndex::Hit& h, int k) {
  HitOrder lt;
  if (static_cast<int>(heap.size()) < k) {
    heap.push_back(h);
    std::push_heap(heap.begin(), heap.end(), lt);  // max at front
  } else if (lt(h, heap.front())) {
    std::pop_heap(heap.begin(), heap.end(), lt);
    heap.back() = h;
    std::push_heap(heap.begin(), heap.end(), lt);
  }
}

}  // namespace

NnIndex NnIndex::build_from_matrices(std::vector<Matrix> mats, int dim,
                                     const IndexParams& p,
                                     std::uint64_t budget_bytes) {
  if (mats.empty()) throw std::invalid_argument("NnIndex: empty point list");
  const std::uint64_t per_point =
      static_cast<std::uint64_t>(dim) * dim * 16 +
      (p.mode == IndexMode::approximate_graph
           ? static_cast<std::uint64_t>(dim) * dim * 8 +
                 static_cast<std::uint64_t>(p.neighbor_degree) * 12
           : 0);
  if (mats.size() * per_point > budget_bytes) {
    throw ResourceError("NnIndex: memory budget exceeded");
  }
  NnIndex idx;
  idx.dim_ = dim;
  idx.params_ = p;
  idx.vec_len_ = 2 * dim * dim;
  idx.mats_ = std::move(mats);
  if (p.mode == IndexMode::approximate_graph) {
    idx.vecs_.reserve(idx.mats_.size() * idx.vec_len_);
    for (const auto& m : idx.mats_) {
      auto v = flatten_f32(canonical_phase(Unitary(m)).representative.mat());
      idx.vecs_.insert(idx.vecs_.end(), v.begin(), v.end());
    }
    idx.build_graph();
  }
  return idx;
}

NnIndex NnIndex::build(const GateSet& gs, int half_depth, const IndexParams& p,
                       std::uint64_t budget_bytes) {
  std::vector<Matrix> mats;
  mats.reserve(enumeration_count(gs.size(), half_depth));
  enumerate_products(gs, half_depth, budget_bytes,
                     [&](const GateWord&, const Matrix& m) { mats.push_back(m); });
  NnIndex idx = build_from_matrices(std::move(mats), gs.dim(), p, budget_bytes);
  idx.set_hash_ = gs.content_hash();
  idx.set_size_ = gs.size();
  idx.half_depth_ = half_depth;
  return idx;
}

float NnIndex::dist2(const float* q, std::uint32_t id) const {
  const float* p = &vecs_[static_cast<std::size_t>(id) * vec_len_];
  float acc = 0;
  for (int i = 0; i < vec_len_; ++i) {
    const float d = q[i] - p[i];
    acc += d * d;
  }
  return acc;
}

std::vector<std::uint32_t> NnIndex::search_layer(const float* q,
                                                std::uint32_t entry, int ef,
                                                int level) const {
  struct Cand {
    float d;
    std::uint32_t id;
  };
  auto nearer = [](const Cand& a, const Cand& b) { return a.d > b.d; };
  auto farther = [](const Cand& a, const Cand& b) { return a.d < b.d; };
  std::vector<std::uint8_t> visited(mats_.size(), 0);
  std::priority_queue<Cand, std::vector<Cand>, decltype(nearer)> frontier(nearer);
  std::priority_queue<Cand, std::vector<Cand>, decltype(farther)> best(farther);
  const float d0 = dist2(q, entry);
  frontier.push({d0, entry});
  best.push({d0, entry});
  visited[entry] = 1;
  while (!frontier.empty()) {
    Cand c = frontier.top();
    if (c.d > best.top().d && static_cast<int>(best.size()) >= ef) break;
    frontier.pop();
    for (std::uint32_t nb : neighbors_[level][c.id]) {
      if (visited[nb]) continue;
      visited[nb] = 1;
      const float d = dist2(q, nb);
      if (static_cast<int>(best.size()) < ef || d < best.top().d) {
        frontier.push({d, nb});
        best.push({d, nb});
        if (static_cast<int>(best.size()) > ef) best.pop();
      }
    }
  }
  std::vector<Cand> out;
  out.reserve(best.size());
  while (!best.empty()) {
    out.push_back(best.top());
    best.pop();
  }
  std::sort(out.begin(), out.end(), [](const Cand& a, const Cand& b) {
    return a.d < b.d || (a.d == b.d && a.id < b.id);
  });
  std::vector<std::uint32_t> ids;
  ids.reserve(out.size());
  for (const auto& c : out) ids.push_back(c.id);
  return ids;
}

std::vector<std::uint32_t> NnIndex::select_neighbors(
    const float* q, const std::vector<std::uint32_t>& cands, int m) const {
  // Heuristic from the small-world-graph literature: keep a candidate only if
  // it is closer to q than to every already selected neighbor.
  std::vector<std::uint32_t> selected;
  for (std::uint32_t c : cands) {
    if (static_cast<int>(selected.size()) >= m) break;
    const float dq = dist2(q, c);
    bool keep = true;
    const float* cv = &vecs_[static_cast<std::size_t>(c) * vec_len_];
    for (std::uint32_t s : selected) {
      if (dist2(cv, s) < dq) {
        keep = false;
        break;
      }
    }
    if (keep) selected.push_back(c);
  }
  // Backfill with closest remaining if the heuristic was too aggressive.
  for (std::uint32_t c : cands) {
    if (static_cast<int>(selected.size()) >= m) break;
    if (std::find(selected.begin(), selected.end(), c) == selected.end()) {
      selected.push_back(c);
    }
  }
  return selected;
}

void NnIndex::insert_node(std::uint32_t id) {
  const float* q = &vecs_[static_cast<std::size_t>(id) * vec_len_];
  const int node_level = levels_[id];
  if (max_level_ < 0) {
    entry_point_ = id;
    max_level_ = node_level;
    return;
  }
  std::uint32_t ep = entry_point_;
  for (int l = max_level_; l > node_level; --l) {
    bool improved = true;
    while (improved) {
      improved = false;
      float d = dist2(q, ep);
      for (std::uint32_t nb : neighbors_[l][ep]) {
        const float dn = dist2(q, nb);
        if (dn < d) {
          d = dn;
          ep = nb;
          improved = true;
        }
      }
    }
  }
  const int m = params_.neighbor_degree;
  for (int l = std::min(node_level, max_level_); l >= 0; --l) {
    auto cands = search_layer(q, ep, params_.build_beam, l);
    ep = cands.front();
    const int cap = (l == 0) ? 2 * m : m;
    auto sel = select_neighbors(q, cands, m);
    neighbors_[l][id] = sel;
    for (std::uint32_t nb : sel) {
      auto& back = neighbors_[l][nb];
      back.push_back(id);
      if (static_cast<int>(back.size()) > cap) {
        const float* nv = &vecs_[static_cast<std::size_t>(nb) * vec_len_];
        std::sort(back.begin(), back.end(), [&](std::uint32_t a, std::uint32_t b) {
          const float da = dist2(nv, a), db = dist2(nv, b);
          return da < db || (da == db && a < b);
        });
        back = select_neighbors(nv, back, cap);
      }
    }
  }
  if (node_level > max_level_) {
    max_level_ = node_level;
    entry_point_ = id;
  }
}

void NnIndex::build_graph() {
  const std::size_t n = mats_.size();
  levels_.resize(n);
  const double ml = 1.0 / std::log(static_cast<double>(params_.neighbor_degree));
  int top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(mix_seed(params_.build_seed, i));
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    levels_[i] = static_cast<int>(-std::log(u) * ml);
    top = std::max(top, levels_[i]);
  }
  neighbors_.assign(top + 1, std::vector<std::vector<std::uint32_t>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    insert_node(static_cast<std::uint32_t>(i));
  }
}

std::vector<NnIndex::Hit> NnIndex::query_exact(const Matrix& target, int k) const {
  const double n = static_cast<double>(dim_);
  std::vector<Hit> heap;
  heap.reserve(k + 1);
  for (std::uint64_t i = 0; i < mats_.size(); ++i) {
    const double inf = std::max(0.0, 1.0 - trace_modulus(mats_[i], target) / n);
    push_topk(heap, Hit{i, inf}, k);
  }
  std::sort(heap.begin(), heap.end(), HitOrder{});
  return heap;
}

std::vector<NnIndex::Hit> NnIndex::query_graph(const Unitary& target, int k) const {
  const Matrix rep = canonical_phase(target).representative.mat();
  std::vector<std::uint32_t> cands;
  for (int r = 0; r < dim_; ++r) {
    const Complex omega = std::polar(1.0, 2.0 * M_PI * r / dim_);
    auto q = flatten_f32(rep * omega);
    std::uint32_t ep = entry_point_;
    for (int l = max_level_; l >= 1; --l) {
      bool improved = true;
      while (improved) {
        improved = false;
        float d = dist2(q.data(), ep);
        for (std::uint32_t nb : neighbors_[l][ep]) {
          const float dn = dist2(q.data(), nb);
          if (dn < d) {
            d = dn;
            ep = nb;
            improved = true;
          }
        }
      }
    }
    auto found = search_layer(q.data(), ep, params_.query_beam, 0);
    const int take = std::max(k, params_.rerank_k);
    if (static_cast<int>(found.size()) > take) found.resize(take);
    cands.insert(cands.end(), found.begin(), found.end());
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  // Rerank merged candidates by exact infidelity to the uncanonicalized target.
  const double n = static_cast<double>(dim_);
  std::vector<Hit> hits;
  hits.reserve(cands.size());
  for (std::uint32_t c : cands) {
    const double inf =
        std::max(0.0, 1.0 - trace_modulus(mats_[c], target.mat()) / n);
    hits.push_back(Hit{c, inf});
  }
  std::sort(hits.begin(), hits.end(), HitOrder{});
  if (static_cast<int>(hits.size()) > k) hits.resize(k);
  return hits;
}

std::vector<NnIndex::Hit> NnIndex::query_nearest(const Unitary& target,
                                                 int k) const {
  if (mats_.empty()) throw std::invalid_argument("query_nearest: empty index");
  if (k < 1) throw std::invalid_argument("query_nearest: k must be >= 1");
  if (target.dim() != dim_) {
    throw DimensionMismatch("query_nearest: target dimension mismatch");
  }
  if (params_.mode == IndexMode::exact_scan) {
    return query_exact(target.mat(), k);
  }
  return query_graph(target, k);
}

// ---- snapshot ---------------------------------------------------------

namespace {
constexpr std::uint32_t kSnapshotMagic = 0x584e4351;  // "QCNX"
constexpr std::uint32_t kSnapshotVersion = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("snapshot: truncated file");
  return v;
}
}  // namespace

void NnIndex::save_snapshot(const std::string& path) const {
  if (half_depth_ < 0) {
    throw std::invalid_argument("save_snapshot: index was not built from a gate set");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_snapshot: cannot open " + path);
  put(os, kSnapshotMagic);
  put(os, kSnapshotVersion);
  put(os, static_cast<std::uint32_t>(dim_));
  put(os, static_cast<std::uint32_t>(set_size_));
  put(os, static_cast<std::uint32_t>(half_depth_));
  put(os, static_cast<std::uint32_t>(params_.mode));
  put(os, static_cast<std::int32_t>(params_.neighbor_degree));
  put(os, static_cast<std::int32_t>(params_.build_beam));
  put(os, static_cast<std::int32_t>(params_.query_beam));
  put(os, static_cast<std::int32_t>(params_.rerank_k));
  put(os, params_.build_seed);
  put(os, set_hash_);
  put(os, static_cast<std::uint64_t>(mats_.size()));
  if (params_.mode == IndexMode::approximate_graph) {
    os.write(reinterpret_cast<const char*>(vecs_.data()),
             static_cast<std::streamsize>(vecs_.size() * sizeof(float)));
    for (int l : levels_) put(os, static_cast<std::int32_t>(l));
    put(os, entry_point_);
    put(os, static_cast<std::int32_t>(max_level_));
    for (const auto& layer : neighbors_) {
      for (const auto& adj : layer) {
        put(os, static_cast<std::uint32_t>(adj.size()));
        os.write(reinterpret_cast<const char*>(adj.data()),
                 static_cast<std::streamsize>(adj.size() * sizeof(std::uint32_t)));
      }
    }
  }
}

NnIndex NnIndex::load_snapshot(const std::string& path, const GateSet& gs,
                               int half_depth) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_snapshot: cannot open " + path);
  if (get<std::uint32_t>(is) != kSnapshotMagic) {
    throw std::runtime_error("load_snapshot: bad magic");
  }
  if (get<std::uint32_t>(is) != kSnapshotVersion) {
    throw std::runtime_error("load_snapshot: unsupported version");
  }
  NnIndex idx;
  idx.dim_ = static_cast<int>(get<std::uint32_t>(is));
  idx.set_size_ = static_cast<int>(get<std::uint32_t>(is));
  idx.half_depth_ = static_cast<int>(get<std::uint32_t>(is));
  idx.params_.mode = static_cast<IndexMode>(get<std::uint32_t>(is));
  idx.params_.neighbor_degree = get<std::int32_t>(is);
  idx.params_.build_beam = get<std::int32_t>(is);
  idx.params_.query_beam = get<std::int32_t>(is);
  idx.params_.rerank_k = get<std::int32_t>(is);
  idx.params_.build_seed = get<std::uint64_t>(is);
  idx.set_hash_ = get<std::uint64_t>(is);
  const auto count = get<std::uint64_t>(is);
  if (idx.dim_ != gs.dim() || idx.set_size_ != gs.size() ||
      idx.half_depth_ != half_depth || idx.set_hash_ != gs.content_hash()) {
    throw std::runtime_error("load_snapshot: snapshot does not match gate set");
  }
  idx.vec_len_ = 2 * idx.dim_ * idx.dim_;
  idx.mats_.reserve(count);
  enumerate_products(gs, half_depth, UINT64_MAX,
                     [&](const GateWord&, const Matrix& m) { idx.mats_.push_back(m); });
  if (idx.mats_.size() != count) {
    throw std::runtime_error("load_snapshot: point count mismatch");
  }
  if (idx.params_.mode == IndexMode::approximate_graph) {
    idx.vecs_.resize(count * idx.vec_len_);
    is.read(reinterpret_cast<char*>(idx.vecs_.data()),
            static_cast<std::streamsize>(idx.vecs_.size() * sizeof(float)));
    idx.levels_.resize(count);
    for (auto& l : idx.levels_) l = get<std::int32_t>(is);
    idx.entry_point_ = get<std::uint32_t>(is);
    idx.max_level_ = get<std::int32_t>(is);
    idx.neighbors_.assign(idx.max_level_ + 1,
                          std::vector<std::vector<std::uint32_t>>(count));
    for (auto& layer : idx.neighbors_) {
      for (auto& adj : layer) {
        adj.resize(get<std::uint32_t>(is));
        is.read(reinterpret_cast<char*>(adj.data()),
                static_cast<std::streamsize>(adj.size() * sizeof(std::uint32_t)));
      }
    }
    if (!is) throw std::runtime_error("load_snapshot: truncated graph");
  }
  return idx;
}

}  // namespace qcompile
