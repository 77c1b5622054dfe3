// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcompile {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Max-entry deviation from U†U = I accepted at construction.
inline constexpr double kUnitarityTol = 1e-10;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense N x N unitary, validated at construction. Immutable.
class Unitary {
 public:
  explicit Unitary(Matrix m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

  static Unitary identity(int dim);
  static Unitary swap_gate();   // two-qubit SWAP
  static Unitary cnot();        // control = qubit 1 (high bit), target = qubit 0
  static Unitary hadamard();
  static Unitary pauli_x();
  static Unitary pauli_y();
  static Unitary pauli_z();
  static Unitary t_gate();

  bool operator==(const Unitary& o) const { return mat_ == o.mat_; }

 private:
  Matrix mat_;
};

double frobenius_distance(const Unitary& a, const Unitary& b);
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Operator infidelity 1 - |Tr(a† b)| / N. Phase invariant, symmetric.
double infidelity(const Unitary& a, const Unitary& b);
double infidelity(const Matrix& a, const Matrix& b);

/// Haar-random unitary via complex Ginibre + QR with R-diagonal phase
/// correction. PRNG is std::mt19937_64 with a Box-Muller normal sampler,
/// so a given seed always yields the same matrix.
Unitary haar_random(int dim, std::uint64_t seed);

class Rng;  // see rng.hpp
Unitary haar_random(int dim, Rng& rng);

enum class VariantMode { four, two };

/// The gate set induced by one arbitrary gate: {U, U^S, U^T, U^ST} or {U, U^S},
/// with U^S = SWAP·U·SWAP.
class GateSet {
 public:
  GateSet(std::vector<Unitary> variants, std::vector<std::string> labels,
          Unitary source);

  int size() const { return static_cast<int>(variants_.size()); }
  int dim() const { return source_.dim(); }
  const Unitary& operator[](int i) const { return variants_.at(i); }
  const std::vector<Unitary>& variants() const { return variants_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Unitary& source() const { return source_; }

  /// FNV-1a over the variant matrices; identifies an enumeration for snapshots.
  std::uint64_t content_hash() const;

 private:
  std::vector<Unitary> variants_;
  std::vector<std::string> labels_;
  Unitary source_;
};

GateSet make_variants(const Unitary& u, VariantMode mode);

/// u = phase · representative with det(representative) = 1.
/// The phase is the principal N-th root of det(u), argument in (-pi/N, pi/N].
struct PhaseCanonical {
  Unitary representative;
  Complex phase;
};

PhaseCanonical canonical_phase(const Unitary& u);

// JSON (de)serialization: row-major array of rows of [re, im] pairs.
std::string unitary_to_json(const Unitary& u);
Unitary unitary_from_json(const std::string& text);

}  // namespace qcompile
