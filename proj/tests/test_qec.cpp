// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcompile/qec.hpp"
#include "qcompile/rng.hpp"
#include "qcompile/statevector.hpp"

using namespace qcompile;

namespace {

double infid2(const Matrix2& a, const Matrix2& b) {
  return 1.0 - std::abs((a.adjoint() * b).trace()) / 2.0;
}

// <state| Z_i Z_j |state>
double zz_expectation(const StateVector& s, int i, int j) {
  StateVector t = s;
  apply_op(t, CircuitOp::z(i));
  apply_op(t, CircuitOp::z(j));
  return s.inner(t).real();
}

}  // namespace

TEST_CASE("coherent error hits the requested infidelity exactly") {
  Rng rng(1);
  for (double eps : {0.0, 1e-6, 1e-3, 0.1, 0.5}) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix2 e = coherent_error(eps, rng);
      CHECK((e.adjoint() * e - Matrix2::Identity()).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK(infid2(e, Matrix2::Identity()) == doctest::Approx(eps).epsilon(1e-12));
    }
  }
  const Matrix2 id = coherent_error(0.0, rng);
  CHECK((id - Matrix2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(coherent_error(-0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(coherent_error(1.0, rng), std::invalid_argument);
}

TEST_CASE("shor codewords") {
  const StateVector zero = shor_codeword(LogicalState::zero);
  const StateVector one = shor_codeword(LogicalState::one);
  CHECK(zero.n_qubits() == 9);
  CHECK(zero.norm() == doctest::Approx(1.0));
  // |0_L> = [(|000>+|111>)/sqrt2]^x3: amplitude 1/(2 sqrt 2) on 8 basis states
  CHECK(std::abs(zero.amp(0)) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
  CHECK(std::abs(zero.amp(0777)) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
  CHECK(std::abs(zero.amp(0707)) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
  CHECK(std::abs(zero.amp(1)) == doctest::Approx(0.0));
  // |1_L> flips the sign of the |111> component in each block
  CHECK(one.amp(0).real() == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
  CHECK(one.amp(0777).real() == doctest::Approx(-1.0 / (2.0 * std::sqrt(2.0))));
  CHECK(std::abs(zero.inner(one)) == doctest::Approx(0.0));
  const StateVector plus = shor_codeword(LogicalState::plus);
  const StateVector minus = shor_codeword(LogicalState::minus);
  CHECK(std::abs(plus.inner(minus)) == doctest::Approx(0.0));
  CHECK(std::abs(plus.inner(zero)) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("codewords satisfy the six ZZ stabilizers") {
  for (LogicalState l : {LogicalState::zero, LogicalState::one,
                         LogicalState::plus, LogicalState::minus}) {
    const StateVector s = shor_codeword(l);
    for (int block = 0; block < 3; ++block) {
      const int q = 3 * block;
      CHECK(zz_expectation(s, q, q + 1) == doctest::Approx(1.0));
      CHECK(zz_expectation(s, q + 1, q + 2) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("encode_shor pads ancilla qubits with |0>") {
  const StateVector s = encode_shor(LogicalState::zero, 11);
  CHECK(s.n_qubits() == 11);
  const StateVector ideal = shor_codeword(LogicalState::zero);
  CHECK(logical_error_probability(s, ideal) == doctest::Approx(0.0));
}

TEST_CASE("repetition circuit corrects every single bit flip") {
  const Circuit c = build_repetition_mfqec();
  CHECK(c.n_qubits == 9);
  CHECK(c.multi_control_count() == 3);
  // encoded alpha|000> + beta|111> on the data triple
  for (int flip = 0; flip < 3; ++flip) {
    StateVector s(9);
    s.amp(0) = 0.6;
    s.amp(0b111) = 0.8;
    StateVector ideal(3);
    ideal.amp(0) = 0.6;
    ideal.amp(0b111) = 0.8;
    apply_op(s, CircuitOp::x(flip));
    apply_circuit(s, c);
    CHECK(logical_error_probability(s, ideal) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("shor circuit shape") {
  const Circuit c = build_shor_mfqec();
  CHECK(c.n_qubits == 21);
  CHECK(c.multi_control_count() == 12);
}

TEST_CASE("shor circuit corrects all 27 single paulis") {
  const auto checks = verify_exactness();
  CHECK(checks.size() == 30);  // 3 repetition + 27 shor
  for (const auto& ck : checks) {
    INFO(ck.name);
    CHECK(ck.pass);
    CHECK(ck.fidelity > 1.0 - 1e-10);
  }
}

TEST_CASE("logical x anticommutes with logical zero") {
  StateVector s = shor_codeword(LogicalState::zero);
  for (const auto& op : shor_logical_x()) {
    CHECK(op.is_logical);
    apply_op(s, op);
  }
  const StateVector one = shor_codeword(LogicalState::one);
  CHECK(std::abs(s.inner(one)) == doctest::Approx(1.0));
}

TEST_CASE("unprotected qubit error stays below 8 eps") {
  const double eps = 1e-3;
  double acc = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const QecReport r = run_sample(Protocol::no_qec, {eps}, 100 + i);
    CHECK(r.logical_error_probability >= 0);
    CHECK(r.logical_error_probability <= 8 * eps + 1e-5);
    acc += r.logical_error_probability;
  }
  const double mean = acc / n;
  CHECK(mean > 0.1 * eps);
  CHECK(mean < 6 * eps);
}

TEST_CASE("zero noise gives zero logical error in every protocol") {
  for (Protocol p : {Protocol::no_qec, Protocol::encode_only, Protocol::mf_qec}) {
    const QecReport r = run_sample(p, {0.0}, 7);
    CHECK(r.logical_error_probability == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("mf qec suppresses a moderate coherent error") {
  const double eps = 1e-2;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const QecReport r = run_sample(Protocol::mf_qec, {eps}, seed);
    // first-order contribution is corrected; residual is O(eps^2)
    CHECK(r.logical_error_probability < 50 * eps * eps);
  }
}

TEST_CASE("sweep is deterministic and thread independent") {
  SweepConfig cfg;
  cfg.protocols = {Protocol::no_qec, Protocol::encode_only};
  cfg.grid = {{1e-3, 1e-3}, {1e-4, 1e-2}};
  cfg.samples_per_point = 4;
  cfg.seed = 9;
  const auto a = sweep(cfg);
  cfg.threads = 4;
  const auto b = sweep(cfg);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 2 * 2 * 4);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].epsilon == b[i].epsilon);
    CHECK(a[i].logical_error_probability == b[i].logical_error_probability);
    CHECK(a[i].seed == b[i].seed);
  }
  // cells with distinct bounds draw epsilon inside the cell
  for (const auto& r : a) {
    CHECK(r.epsilon >= 1e-4);
    CHECK(r.epsilon <= 1e-2);
  }
}

TEST_CASE("protocol names") {
  CHECK(protocol_name(Protocol::no_qec) == "no_qec");
  CHECK(protocol_name(Protocol::encode_only) == "encode_only");
  CHECK(protocol_name(Protocol::mf_qec) == "mf_qec");
}
