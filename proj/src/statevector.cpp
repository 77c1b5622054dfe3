// SPDX-License-Identifier: Apache-2.0
#include "qcompile/statevector.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcompile {

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) {
    throw std::invalid_argument("StateVector: n_qubits must be in [1, 24]");
  }
  amps_.assign(1ULL << n_qubits, Complex2(0, 0));
  amps_[0] = Complex2(1, 0);
}

StateVector StateVector::basis(int n_qubits, std::uint64_t bits) {
  StateVector s(n_qubits);
  if (bits >= s.size()) throw std::invalid_argument("StateVector: bits out of range");
  s.amps_[0] = Complex2(0, 0);
  s.amps_[bits] = Complex2(1, 0);
  return s;
}

double StateVector::norm() const {
  double acc = 0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

Complex2 StateVector::inner(const StateVector& other) const {
  if (n_ != other.n_) throw std::invalid_argument("inner: size mismatch");
  Complex2 acc(0, 0);
  for (std::uint64_t i = 0; i < size(); ++i) {
    acc += std::conj(amps_[i]) * other.amps_[i];
  }
  return acc;
}

Matrix2 CircuitOp::x_mat() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 CircuitOp::y_mat() {
  Matrix2 m;
  m << Complex2(0, 0), Complex2(0, -1), Complex2(0, 1), Complex2(0, 0);
  return m;
}
Matrix2 CircuitOp::z_mat() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
Matrix2 CircuitOp::h_mat() {
  Matrix2 m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

CircuitOp CircuitOp::one(const Matrix2& g, int target, std::string name) {
  CircuitOp op;
  op.gate = g;
  op.target = target;
  op.name = std::move(name);
  return op;
}

CircuitOp CircuitOp::controlled(const Matrix2& g, int target,
                                std::vector<std::pair<int, bool>> controls,
                                std::string name) {
  CircuitOp op;
  op.gate = g;
  op.target = target;
  op.controls = std::move(controls);
  op.name = std::move(name);
  return op;
}

CircuitOp CircuitOp::cnot(int control, int target) {
  return controlled(x_mat(), target, {{control, true}}, "CNOT");
}

CircuitOp CircuitOp::toffoli(int c1, int c2, int target) {
  return controlled(x_mat(), target, {{c1, true}, {c2, true}}, "TOFFOLI");
}

CircuitOp CircuitOp::swap(int a, int b) {
  CircuitOp op;
  op.kind = Kind::swap;
  op.target = a;
  op.target2 = b;
  op.name = "SWAP";
  return op;
}

int Circuit::multi_control_count() const {
  int n = 0;
  for (const auto& op : ops) {
    if (op.controls.size() >= 2) ++n;
  }
  return n;
}

std::string Circuit::dump() const {
  std::ostringstream os;
  for (const auto& op : ops) {
    os << op.name << ' ' << op.target;
    if (op.kind == CircuitOp::Kind::swap) os << ' ' << op.target2;
    if (!op.controls.empty()) {
      os << " [";
      for (std::size_t i = 0; i < op.controls.size(); ++i) {
        if (i) os << ' ';
        os << op.controls[i].first << (op.controls[i].second ? '+' : '-');
      }
      os << ']';
    }
    os << '\n';
  }
  return os.str();
}

namespace {

void validate_op(const StateVector& state, const CircuitOp& op) {
  auto check = [&](int q) {
    if (q < 0 || q >= state.n_qubits()) {
      throw std::out_of_range("apply_op: qubit index out of range");
    }
  };
  check(op.target);
  if (op.kind == CircuitOp::Kind::swap) {
    check(op.target2);
    if (op.target == op.target2) {
      throw std::invalid_argument("apply_op: swap targets coincide");
    }
  }
  for (const auto& [q, pol] : op.controls) {
    (void)pol;
    check(q);
    if (q == op.target || (op.kind == CircuitOp::Kind::swap && q == op.target2)) {
      throw std::invalid_argument("apply_op: control overlaps target");
    }
  }
}

}  // namespace

void apply_op(StateVector& state, const CircuitOp& op) {
  validate_op(state, op);
  std::uint64_t ctrl_mask = 0, ctrl_value = 0;
  for (const auto& [q, pol] : op.controls) {
    ctrl_mask |= 1ULL << q;
    if (pol) ctrl_value |= 1ULL << q;
  }
  auto& amps = state.amps();
  const std::uint64_t size = state.size();
  if (op.kind == CircuitOp::Kind::swap) {
    const std::uint64_t ba = 1ULL << op.target;
    const std::uint64_t bb = 1ULL << op.target2;
    for (std::uint64_t i = 0; i < size; ++i) {
      const bool a = i & ba, b = i & bb;
      if (a && !b && (i & ctrl_mask) == ctrl_value) {
        std::swap(amps[i], (amps[(i ^ ba) | bb]));
      }
    }
    return;
  }
  const std::uint64_t bt = 1ULL << op.target;
  const Complex2 g00 = op.gate(0, 0), g01 = op.gate(0, 1);
  const Complex2 g10 = op.gate(1, 0), g11 = op.gate(1, 1);
  for (std::uint64_t i = 0; i < size; ++i) {
    if ((i & bt) || (i & ctrl_mask) != ctrl_value) continue;
    const std::uint64_t j = i | bt;
    const Complex2 a0 = amps[i], a1 = amps[j];
    amps[i] = g00 * a0 + g01 * a1;
    amps[j] = g10 * a0 + g11 * a1;
  }
}

void apply_circuit(StateVector& state, const Circuit& c) {
  if (c.n_qubits != state.n_qubits()) {
    throw std::invalid_argument("apply_circuit: qubit count mismatch");
  }
  for (const auto& op : c.ops) apply_op(state, op);
}

}  // namespace qcompile
