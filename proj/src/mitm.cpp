// SPDX-License-Identifier: Apache-2.0
#include "qcompile/mitm.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "qcompile/rng.hpp"

namespace qcompile {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Best {
  double infid = 2.0;
  GateWord word;
  bool valid = false;

  // Strict total order on (infidelity, word): deterministic for any
  // partitioning of the candidate stream.
  void offer(double inf, GateWord w) {
    if (!valid || inf < infid || (inf == infid && w < word)) {
      infid = inf;
      word = std::move(w);
      valid = true;
    }
  }
  void merge(const Best& o) {
    if (o.valid) offer(o.infid, o.word);
  }
};

GateWord concat_words(const GateWord& first, const GateWord& second) {
  GateWord w = first;
  w.letters.insert(w.letters.end(), second.letters.begin(), second.letters.end());
  return w;
}

}  // namespace

CompilationResult compile_mitm(const GateSet& gs, const Unitary& target,
                               int half_depth, const NnIndex& index,
                               const CompileOptions& opts) {
  if (target.dim() != gs.dim()) {
    throw DimensionMismatch("compile_mitm: target dimension mismatch");
  }
  CompilationResult res;
  res.half_depth = half_depth;
  if (half_depth == 0) {
    res.word = GateWord{};
    res.infid = infidelity(Unitary::identity(gs.dim()), target);
    res.frobenius = frobenius_distance(Unitary::identity(gs.dim()), target);
    return res;
  }
  const std::uint64_t count = index.size();
  res.stats.points = count;

  const double t0 = now_seconds();
  const int threads = std::max(1, opts.threads);
  const int k = std::max(1, opts.index.rerank_k);
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> examined{0};
  std::vector<Best> bests(threads);

  auto worker = [&](int w) {
    const std::uint64_t lo = count * w / threads;
    const std::uint64_t hi = count * (w + 1) / threads;
    Best local;
    std::uint64_t seen = 0;
    for (std::uint64_t x = lo; x < hi && !stop.load(std::memory_order_relaxed);
         ++x) {
      const Matrix l = target.mat() * index.matrix_at(x).adjoint();
      auto hits = index.query_nearest(Unitary(l), k);
      seen += hits.size();
      for (const auto& h : hits) {
        GateWord w2 = concat_words(word_from_id(x, half_depth, gs.size()),
                                   word_from_id(h.word_id, half_depth, gs.size()));
        local.offer(h.infid, std::move(w2));
      }
      if (opts.early_exit_infidelity &&
          local.valid && local.infid <= *opts.early_exit_infidelity) {
        stop.store(true, std::memory_order_relaxed);
      }
    }
    bests[w] = std::move(local);
    examined += seen;
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  Best best;
  for (const auto& b : bests) best.merge(b);
  res.stats.query_seconds = now_seconds() - t0;
  res.stats.candidates_examined = examined.load();

  res.word = best.word;
  const Unitary compiled = evaluate_word(gs, res.word);
  res.infid = infidelity(compiled, target);
  res.frobenius = frobenius_distance(compiled, target);
  return res;
}

CompilationResult compile_mitm(const GateSet& gs, const Unitary& target,
                               int half_depth, const CompileOptions& opts) {
  if (half_depth == 0) {
    CompilationResult res;
    res.half_depth = 0;
    res.word = GateWord{};
    res.infid = infidelity(Unitary::identity(gs.dim()), target);
    res.frobenius = frobenius_distance(Unitary::identity(gs.dim()), target);
    return res;
  }
  const double t0 = now_seconds();
  NnIndex index = NnIndex::build(gs, half_depth, opts.index, opts.budget_bytes);
  const double build_s = now_seconds() - t0;
  CompilationResult res = compile_mitm(gs, target, half_depth, index, opts);
  res.stats.index_seconds = build_s;
  return res;
}

CompilationResult compile_brute(const GateSet& gs, const Unitary& target,
                                int depth) {
  if (target.dim() != gs.dim()) {
    throw DimensionMismatch("compile_brute: target dimension mismatch");
  }
  if (enumeration_count(gs.size(), depth) > 10'000'000ULL) {
    throw ResourceError("compile_brute: |U|^depth exceeds the 1e7 guard");
  }
  CompilationResult res;
  res.half_depth = depth / 2;
  Best best;
  std::uint64_t seen = 0;
  enumerate_products(gs, depth, UINT64_MAX,
                     [&](const GateWord& w, const Matrix& m) {
                       best.offer(infidelity(m, target.mat()), w);
                       ++seen;
                     });
  res.stats.points = seen;
  res.stats.candidates_examined = seen;
  res.word = best.word;
  const Unitary compiled = evaluate_word(gs, res.word);
  res.infid = infidelity(compiled, target);
  res.frobenius = frobenius_distance(compiled, target);
  return res;
}

LinearFit least_squares(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least_squares: need >= 2 points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("least_squares: degenerate x");
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

ScalingOutcome scaling_experiment(VariantMode mode, const Unitary& target,
                                  const std::vector<std::uint64_t>& seeds,
                                  const std::vector<int>& depths,
                                  const CompileOptions& opts,
                                  std::vector<ScalingRow>* partial) {
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] % 2 != 0) {
      throw std::invalid_argument("scaling_experiment: depths must be even");
    }
    if (i > 0 && depths[i] <= depths[i - 1]) {
      throw std::invalid_argument("scaling_experiment: depths must ascend");
    }
  }
  ScalingOutcome out;
  for (std::uint64_t seed : seeds) {
    const GateSet gs = make_variants(haar_random(4, seed), mode);
    for (int d : depths) {
      const double t0 = now_seconds();
      CompilationResult r = compile_mitm(gs, target, d / 2, opts);
      ScalingRow row;
      row.gate_set_seed = seed;
      row.mode = mode;
      row.total_depth = d;
      row.best_infidelity = r.infid;
      row.best_frobenius = r.frobenius;
      row.wall_seconds = now_seconds() - t0;
      row.points = r.stats.points;
      row.index_mode = opts.index.mode;
      out.rows.push_back(row);
      if (partial) partial->push_back(row);
    }
  }
  if (depths.size() >= 2) {
    std::vector<double> xs, ys;
    for (int d : depths) {
      std::vector<double> infs;
      for (const auto& r : out.rows) {
        if (r.total_depth == d) infs.push_back(r.best_infidelity);
      }
      std::sort(infs.begin(), infs.end());
      const std::size_t n = infs.size();
      const double med = (n % 2 == 1) ? infs[n / 2]
                                      : 0.5 * (infs[n / 2 - 1] + infs[n / 2]);
      if (med <= 0) continue;  // exact hit; cannot take the log
      xs.push_back(std::log10(1.0 / med));
      ys.push_back(static_cast<double>(d));
    }
    if (xs.size() >= 2) out.fit = least_squares(xs, ys);
  }
  return out;
}

MeshEstimate mesh_size_estimate(const GateSet& gs, int half_depth,
                                int n_targets, std::uint64_t target_seed,
                                const CompileOptions& opts) {
  if (n_targets < 1) {
    throw std::invalid_argument("mesh_size_estimate: n_targets must be >= 1");
  }
  MeshEstimate est;
  if (half_depth == 0) {
    for (int t = 0; t < n_targets; ++t) {
      const Unitary target = haar_random(gs.dim(), mix_seed(target_seed, t));
      est.max_infidelity = std::max(
          est.max_infidelity, infidelity(Unitary::identity(gs.dim()), target));
      est.max_frobenius = std::max(
          est.max_frobenius,
          frobenius_distance(Unitary::identity(gs.dim()), target));
    }
    return est;
  }
  NnIndex index = NnIndex::build(gs, half_depth, opts.index, opts.budget_bytes);
  for (int t = 0; t < n_targets; ++t) {
    const Unitary target = haar_random(gs.dim(), mix_seed(target_seed, t));
    CompilationResult r = compile_mitm(gs, target, half_depth, index, opts);
    est.max_infidelity = std::max(est.max_infidelity, r.infid);
    est.max_frobenius = std::max(est.max_frobenius, r.frobenius);
  }
  return est;
}

}  // namespace qcompile
