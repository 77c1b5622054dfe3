// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qcompile {

using Complex2 = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

/// Full-amplitude register. Qubit 0 is the least significant bit of the
/// basis index.
class StateVector {
 public:
  explicit StateVector(int n_qubits);
  static StateVector basis(int n_qubits, std::uint64_t bits);

  int n_qubits() const { return n_; }
  std::uint64_t size() const { return amps_.size(); }
  Complex2& amp(std::uint64_t i) { return amps_[i]; }
  const Complex2& amp(std::uint64_t i) const { return amps_[i]; }
  std::vector<Complex2>& amps() { return amps_; }
  const std::vector<Complex2>& amps() const { return amps_; }

  double norm() const;
  Complex2 inner(const StateVector& other) const;  // <this|other>

 private:
  int n_;
  std::vector<Complex2> amps_;
};

/// One gate: a single-qubit unitary payload or a SWAP, with any number of
/// controls. Control polarity false means control-on-|0>.
struct CircuitOp {
  enum class Kind { one_qubit, swap };

  Kind kind = Kind::one_qubit;
  Matrix2 gate = Matrix2::Identity();
  int target = 0;
  int target2 = -1;  // swap only
  std::vector<std::pair<int, bool>> controls;
  std::string name;
  bool is_logical = false;  // belongs to a logical operation, not the QEC round
  // Fraction of the logical operation's infidelity budget carried by this
  // gate: a transversal logical gate of k physical gates uses 1/k each, so
  // protocols are compared at equal per-logical-gate error.
  double noise_scale = 1.0;

  static CircuitOp one(const Matrix2& g, int target, std::string name);
  static CircuitOp controlled(const Matrix2& g, int target,
                              std::vector<std::pair<int, bool>> controls,
                              std::string name);
  static CircuitOp x(int target) { return one(x_mat(), target, "X"); }
  static CircuitOp y(int target) { return one(y_mat(), target, "Y"); }
  static CircuitOp z(int target) { return one(z_mat(), target, "Z"); }
  static CircuitOp h(int target) { return one(h_mat(), target, "H"); }
  static CircuitOp cnot(int control, int target);
  static CircuitOp toffoli(int c1, int c2, int target);
  static CircuitOp swap(int a, int b);

  static Matrix2 x_mat();
  static Matrix2 y_mat();
  static Matrix2 z_mat();
  static Matrix2 h_mat();
};

struct Circuit {
  int n_qubits = 0;
  std::vector<CircuitOp> ops;

  /// Gates with two or more controls.
  int multi_control_count() const;
  /// Debug dump, one op per line: NAME targets [controls±].
  std::string dump() const;
};

void apply_op(StateVector& state, const CircuitOp& op);
void apply_circuit(StateVector& state, const Circuit& c);

}  // namespace qcompile
