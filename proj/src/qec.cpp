// SPDX-License-Identifier: Apache-2.0
#include "qcompile/qec.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace qcompile {

Matrix2 coherent_error(double epsilon, Rng& rng) {
  if (epsilon < 0 || epsilon >= 1) {
    throw std::invalid_argument("coherent_error: epsilon must be in [0, 1)");
  }
  if (epsilon == 0) return Matrix2::Identity();
  // Uniform axis on the sphere.
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * M_PI * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double nx = r * std::cos(phi), ny = r * std::sin(phi), nz = z;
  const double half = std::acos(1.0 - epsilon);  // theta/2
  const Complex2 c(std::cos(half), 0);
  const Complex2 is(0, std::sin(half));
  Matrix2 e;
  e(0, 0) = c - is * nz;
  e(0, 1) = -is * (nx - Complex2(0, 1) * ny);
  e(1, 0) = -is * (nx + Complex2(0, 1) * ny);
  e(1, 1) = c + is * nz;
  return e;
}

Circuit build_repetition_mfqec() {
  // data 0-2, ancilla 3-5, syndrome 6-8
  Circuit c;
  c.n_qubits = 9;
  // GHZ ancilla so the copy picks up only the error pattern, not the
  // encoded bit: (|000>+|111>)/sqrt(2) is invariant under a clean copy.
  c.ops.push_back(CircuitOp::h(3));
  c.ops.push_back(CircuitOp::cnot(3, 4));
  c.ops.push_back(CircuitOp::cnot(3, 5));
  for (int i = 0; i < 3; ++i) c.ops.push_back(CircuitOp::cnot(i, 3 + i));
  auto parities = [&] {
    c.ops.push_back(CircuitOp::cnot(3, 6));
    c.ops.push_back(CircuitOp::cnot(4, 6));
    c.ops.push_back(CircuitOp::cnot(4, 7));
    c.ops.push_back(CircuitOp::cnot(5, 7));
    c.ops.push_back(CircuitOp::cnot(3, 8));
    c.ops.push_back(CircuitOp::cnot(5, 8));
  };
  parities();
  c.ops.push_back(CircuitOp::toffoli(6, 8, 0));
  c.ops.push_back(CircuitOp::toffoli(6, 7, 1));
  c.ops.push_back(CircuitOp::toffoli(7, 8, 2));
  return c;
}

StateVector shor_codeword(LogicalState l) {
  StateVector s(9);
  s.amp(0) = Complex2(0, 0);
  const double zero_w = 1.0 / (2.0 * std::sqrt(2.0));
  auto add = [&](int sign_per_block, double weight) {
    // sign_per_block: -1 applies a minus to each |111> block component
    for (int b1 = 0; b1 < 2; ++b1) {
      for (int b2 = 0; b2 < 2; ++b2) {
        for (int b3 = 0; b3 < 2; ++b3) {
          const std::uint64_t idx = (b1 ? 07ULL : 0) | (b2 ? 070ULL : 0) |
                                    (b3 ? 0700ULL : 0);
          double sgn = 1.0;
          if (sign_per_block < 0) {
            if (b1) sgn = -sgn;
            if (b2) sgn = -sgn;
            if (b3) sgn = -sgn;
          }
          s.amp(idx) += weight * sgn * zero_w;
        }
      }
    }
  };
  switch (l) {
    case LogicalState::zero:
      add(+1, 1.0);
      break;
    case LogicalState::one:
      add(-1, 1.0);
      break;
    case LogicalState::plus:
      add(+1, 1.0 / std::sqrt(2.0));
      add(-1, 1.0 / std::sqrt(2.0));
      break;
    case LogicalState::minus:
      add(+1, 1.0 / std::sqrt(2.0));
      add(-1, -1.0 / std::sqrt(2.0));
      break;
  }
  return s;
}

StateVector encode_shor(LogicalState l, int n_qubits) {
  if (n_qubits < 9) throw std::invalid_argument("encode_shor: need >= 9 qubits");
  StateVector code = shor_codeword(l);
  StateVector s(n_qubits);
  s.amp(0) = Complex2(0, 0);
  for (std::uint64_t i = 0; i < code.size(); ++i) s.amp(i) = code.amp(i);
  return s;
}

Circuit build_shor_mfqec() {
  // data 0-8 in blocks {0,1,2} {3,4,5} {6,7,8}; ancilla 9-17; syndrome 18-20
  constexpr int kS1 = 18, kS2 = 19, kS3 = 20;
  Circuit c;
  c.n_qubits = 21;
  // Ancilla GHZ prep: each ancilla block -> (|000> + |111>)/sqrt(2).
  for (int b = 0; b < 3; ++b) {
    const int a = 9 + 3 * b;
    c.ops.push_back(CircuitOp::h(a));
    c.ops.push_back(CircuitOp::cnot(a, a + 1));
    c.ops.push_back(CircuitOp::cnot(a, a + 2));
  }
  // Bit-flip round, Steane style per block. The GHZ ancilla absorbs the
  // logical content of the copy, so only the error pattern reaches the
  // parities. Syndrome qubits are uncomputed from the (still dirty) ancilla
  // and reused by the next block.
  for (int b = 0; b < 3; ++b) {
    const int d = 3 * b, a = 9 + 3 * b;
    for (int i = 0; i < 3; ++i) c.ops.push_back(CircuitOp::cnot(d + i, a + i));
    auto parities = [&] {
      c.ops.push_back(CircuitOp::cnot(a, kS1));
      c.ops.push_back(CircuitOp::cnot(a + 1, kS1));
      c.ops.push_back(CircuitOp::cnot(a + 1, kS2));
      c.ops.push_back(CircuitOp::cnot(a + 2, kS2));
      c.ops.push_back(CircuitOp::cnot(a, kS3));
      c.ops.push_back(CircuitOp::cnot(a + 2, kS3));
    };
    parities();
    c.ops.push_back(CircuitOp::toffoli(kS1, kS3, d));
    c.ops.push_back(CircuitOp::toffoli(kS1, kS2, d + 1));
    c.ops.push_back(CircuitOp::toffoli(kS2, kS3, d + 2));
    parities();  // uncompute
  }
  // Phase round: coherently extract the three block-pair X-parity syndromes
  // (X on all six data qubits of the pair), then correct with two-controlled
  // Z gates. A Z error in block b flips the two parities touching b.
  const int pair_syndromes[3][3] = {{kS1, 0, 1}, {kS2, 1, 2}, {kS3, 0, 2}};
  for (const auto& ps : pair_syndromes) {
    const int s = ps[0];
    c.ops.push_back(CircuitOp::h(s));
    for (int b : {ps[1], ps[2]}) {
      for (int i = 0; i < 3; ++i) {
        c.ops.push_back(CircuitOp::controlled(CircuitOp::x_mat(), 3 * b + i,
                                              {{s, true}}, "CX"));
      }
    }
    c.ops.push_back(CircuitOp::h(s));
  }
  c.ops.push_back(
      CircuitOp::controlled(CircuitOp::z_mat(), 0, {{kS1, true}, {kS3, true}}, "CCZ"));
  c.ops.push_back(
      CircuitOp::controlled(CircuitOp::z_mat(), 3, {{kS1, true}, {kS2, true}}, "CCZ"));
  c.ops.push_back(
      CircuitOp::controlled(CircuitOp::z_mat(), 6, {{kS2, true}, {kS3, true}}, "CCZ"));
  return c;
}

std::vector<CircuitOp> shor_logical_x() {
  std::vector<CircuitOp> ops;
  for (int q : {0, 3, 6}) {
    CircuitOp op = CircuitOp::z(q);
    op.is_logical = true;
    op.noise_scale = 1.0 / 3.0;  // the X-bar as a whole has infidelity eps
    ops.push_back(op);
  }
  return ops;
}

double logical_error_probability(const StateVector& state,
                                 const StateVector& ideal_data) {
  const int k = ideal_data.n_qubits();
  const int n = state.n_qubits();
  if (n < k) throw std::invalid_argument("logical_error_probability: register too small");
  const std::uint64_t data_size = 1ULL << k;
  const std::uint64_t anc_size = 1ULL << (n - k);
  double p_ok = 0;
  for (std::uint64_t a = 0; a < anc_size; ++a) {
    Complex2 overlap(0, 0);
    const std::uint64_t base = a << k;
    for (std::uint64_t d = 0; d < data_size; ++d) {
      overlap += std::conj(ideal_data.amp(d)) * state.amp(base | d);
    }
    p_ok += std::norm(overlap);
  }
  double p = 1.0 - p_ok;
  if (p < 0) p = 0;
  return p;
}

namespace {

void apply_noisy(StateVector& state, const std::vector<CircuitOp>& ops,
                 const NoiseSpec& noise, Rng& rng) {
  for (const auto& op : ops) {
    apply_op(state, op);
    const bool noisy = noise.epsilon > 0 &&
                       (noise.sites == NoiseSites::all_gates || op.is_logical);
    if (!noisy) continue;
    std::vector<int> touched{op.target};
    if (op.kind == CircuitOp::Kind::swap) touched.push_back(op.target2);
    for (const auto& [q, pol] : op.controls) {
      (void)pol;
      touched.push_back(q);
    }
    for (int q : touched) {
      apply_op(state, CircuitOp::one(
                          coherent_error(noise.epsilon * op.noise_scale, rng),
                          q, "E"));
    }
  }
}

}  // namespace

QecReport run_sample(Protocol protocol, const NoiseSpec& noise,
                     std::uint64_t seed) {
  Rng rng(seed);
  QecReport rep;
  rep.protocol = protocol;
  rep.epsilon = noise.epsilon;
  rep.seed = seed;
  switch (protocol) {
    case Protocol::no_qec: {
      StateVector s(1);
      std::vector<CircuitOp> ops;
      for (int g = 0; g < 2; ++g) {
        CircuitOp x = CircuitOp::x(0);
        x.is_logical = true;
        ops.push_back(x);
      }
      apply_noisy(s, ops, noise, rng);
      rep.logical_error_probability =
          logical_error_probability(s, StateVector::basis(1, 0));
      break;
    }
    case Protocol::encode_only:
    case Protocol::mf_qec: {
      const int n = (protocol == Protocol::mf_qec) ? 21 : 9;
      StateVector s = encode_shor(LogicalState::zero, n);
      std::vector<CircuitOp> ops;
      for (int g = 0; g < 2; ++g) {
        const auto xbar = shor_logical_x();
        ops.insert(ops.end(), xbar.begin(), xbar.end());
      }
      if (protocol == Protocol::mf_qec) {
        const Circuit qec = build_shor_mfqec();
        ops.insert(ops.end(), qec.ops.begin(), qec.ops.end());
      }
      apply_noisy(s, ops, noise, rng);
      rep.logical_error_probability =
          logical_error_probability(s, shor_codeword(LogicalState::zero));
      break;
    }
  }
  return rep;
}

std::vector<QecReport> sweep(const SweepConfig& cfg) {
  if (cfg.samples_per_point < 1) {
    throw std::invalid_argument("sweep: samples_per_point must be >= 1");
  }
  struct Task {
    Protocol protocol;
    SweepPoint point;
    std::uint64_t index;
  };
  std::vector<Task> tasks;
  std::uint64_t idx = 0;
  for (Protocol p : cfg.protocols) {
    for (const auto& cell : cfg.grid) {
      for (int s = 0; s < cfg.samples_per_point; ++s) {
        tasks.push_back(Task{p, cell, idx++});
      }
    }
  }
  std::vector<QecReport> reports(tasks.size());
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      const Task& task = tasks[t];
      const std::uint64_t sample_seed = mix_seed(cfg.seed, task.index);
      NoiseSpec noise;
      noise.sites = cfg.sites;
      if (task.point.epsilon_high > task.point.epsilon_low) {
        Rng eps_rng(mix_seed(sample_seed, 0x5eedULL));
        const double lo_l = std::log(task.point.epsilon_low);
        const double hi_l = std::log(task.point.epsilon_high);
        noise.epsilon = std::exp(lo_l + eps_rng.uniform() * (hi_l - lo_l));
      } else {
        noise.epsilon = task.point.epsilon_low;
      }
      reports[t] = run_sample(task.protocol, noise, sample_seed);
    }
  };
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    run_range(0, tasks.size());
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      const std::size_t lo = tasks.size() * w / threads;
      const std::size_t hi = tasks.size() * (w + 1) / threads;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return reports;
}

std::vector<CheckResult> verify_exactness() {
  std::vector<CheckResult> results;
  const Circuit rep_circuit = build_repetition_mfqec();
  for (int q = 0; q < 3; ++q) {
    StateVector s = StateVector::basis(9, 0);  // data |000>
    apply_op(s, CircuitOp::x(q));
    apply_circuit(s, rep_circuit);
    const double fid =
        1.0 - logical_error_probability(s, StateVector::basis(3, 0));
    results.push_back(
        {"repetition X on d" + std::to_string(q), fid >= 1.0 - 1e-10, fid});
  }
  const Circuit shor_circuit = build_shor_mfqec();
  const StateVector ideal = shor_codeword(LogicalState::zero);
  const char* pauli_names[3] = {"X", "Y", "Z"};
  for (int q = 0; q < 9; ++q) {
    for (int p = 0; p < 3; ++p) {
      StateVector s = encode_shor(LogicalState::zero, 21);
      switch (p) {
        case 0: apply_op(s, CircuitOp::x(q)); break;
        case 1: apply_op(s, CircuitOp::y(q)); break;
        case 2: apply_op(s, CircuitOp::z(q)); break;
      }
      apply_circuit(s, shor_circuit);
      const double fid = 1.0 - logical_error_probability(s, ideal);
      results.push_back({std::string("shor ") + pauli_names[p] + " on d" +
                             std::to_string(q),
                         fid >= 1.0 - 1e-10, fid});
    }
  }
  return results;
}

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::no_qec: return "no_qec";
    case Protocol::encode_only: return "encode_only";
    case Protocol::mf_qec: return "mf_qec";
  }
  return "?";
}

}  // namespace qcompile
