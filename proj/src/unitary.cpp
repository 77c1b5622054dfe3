// SPDX-License-Identifier: Apache-2.0
#include "qcompile/unitary.hpp"

#include <nlohmann/json.hpp>

#include "qcompile/rng.hpp"

namespace qcompile {

namespace {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

void check_unitarity(const Matrix& m) {
  const auto n = m.rows();
  if (n < 2 || m.cols() != n || !is_power_of_two(static_cast<int>(n))) {
    throw std::invalid_argument("Unitary: dim must be a power of two >= 2");
  }
  Matrix dev = m.adjoint() * m - Matrix::Identity(n, n);
  if (dev.cwiseAbs().maxCoeff() > kUnitarityTol) {
    throw std::invalid_argument("Unitary: input fails U†U = I within 1e-10");
  }
}

}  // namespace

Unitary::Unitary(Matrix m) : mat_(std::move(m)) { check_unitarity(mat_); }

Unitary Unitary::identity(int dim) { return Unitary(Matrix::Identity(dim, dim)); }

Unitary Unitary::swap_gate() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return Unitary(m);
}

Unitary Unitary::cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return Unitary(m);
}

Unitary Unitary::hadamard() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return Unitary(m);
}

Unitary Unitary::pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Unitary(m);
}

Unitary Unitary::pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return Unitary(m);
}

Unitary Unitary::pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Unitary(m);
}

Unitary Unitary::t_gate() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = std::polar(1.0, M_PI / 4.0);
  return Unitary(m);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("frobenius_distance: dimension mismatch");
  }
  return (a - b).norm();
}

double frobenius_distance(const Unitary& a, const Unitary& b) {
  return frobenius_distance(a.mat(), b.mat());
}

double infidelity(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("infidelity: dimension mismatch");
  }
  const Complex tr = (a.adjoint() * b).trace();
  double v = 1.0 - std::abs(tr) / static_cast<double>(a.rows());
  if (v < 0.0) v = 0.0;  // clamp float noise at exact matches
  return v;
}

double infidelity(const Unitary& a, const Unitary& b) {
  return infidelity(a.mat(), b.mat());
}

Unitary haar_random(int dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("haar_random: dim must be >= 2");
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase gauge: multiply each column of Q by the phase of the
  // corresponding diagonal of R (Mezzadri's recipe).
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0) ? d / mag : Complex(1, 0);
  }
  return Unitary(std::move(q));
}

Unitary haar_random(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random(dim, rng);
}

GateSet::GateSet(std::vector<Unitary> variants, std::vector<std::string> labels,
                 Unitary source)
    : variants_(std::move(variants)),
      labels_(std::move(labels)),
      source_(std::move(source)) {
  if (variants_.empty() || variants_.size() != labels_.size()) {
    throw std::invalid_argument("GateSet: variants/labels size mismatch");
  }
  for (const auto& v : variants_) {
    if (v.dim() != source_.dim()) {
      throw DimensionMismatch("GateSet: variant dimension mismatch");
    }
  }
}

std::uint64_t GateSet::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* p, size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& v : variants_) {
    const Matrix& m = v.mat();
    feed(m.data(), sizeof(Complex) * m.size());
  }
  return h;
}

GateSet make_variants(const Unitary& u, VariantMode mode) {
  if (u.dim() != 4) {
    throw std::invalid_argument("make_variants: SWAP conjugation needs dim 4");
  }
  const Matrix s = Unitary::swap_gate().mat();
  Matrix us = s * u.mat() * s;
  std::vector<Unitary> variants;
  std::vector<std::string> labels;
  variants.emplace_back(u);
  labels.emplace_back("U");
  variants.emplace_back(Unitary(us));
  labels.emplace_back("U^S");
  if (mode == VariantMode::four) {
    variants.emplace_back(Unitary(u.mat().transpose()));
    labels.emplace_back("U^T");
    variants.emplace_back(Unitary(us.transpose()));
    labels.emplace_back("U^ST");
  }
  return GateSet(std::move(variants), std::move(labels), u);
}

PhaseCanonical canonical_phase(const Unitary& u) {
  const int n = u.dim();
  const Complex det = u.mat().determinant();
  const Complex delta = std::polar(1.0, std::arg(det) / n);
  return PhaseCanonical{Unitary(u.mat() / delta), delta};
}

std::string unitary_to_json(const Unitary& u) {
  nlohmann::json rows = nlohmann::json::array();
  const Matrix& m = u.mat();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

Unitary unitary_from_json(const std::string& text) {
  nlohmann::json rows = nlohmann::json::parse(text);
  if (!rows.is_array() || rows.empty()) {
    throw std::invalid_argument("unitary_from_json: expected array of rows");
  }
  const int n = static_cast<int>(rows.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
      throw std::invalid_argument("unitary_from_json: ragged matrix");
    }
    for (int j = 0; j < n; ++j) {
      const auto& e = rows[i][j];
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("unitary_from_json: entry must be [re, im]");
      }
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return Unitary(std::move(m));
}

}  // namespace qcompile
