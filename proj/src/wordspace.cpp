// SPDX-License-Identifier: Apache-2.0
#include "qcompile/wordspace.hpp"

#include <cmath>

namespace qcompile {

std::string GateWord::to_string() const {
  std::string s;
  s.reserve(letters.size());
  for (auto l : letters) s.push_back(static_cast<char>('0' + l));
  return s;
}

GateWord GateWord::from_string(const std::string& s) {
  GateWord w;
  w.letters.reserve(s.size());
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("GateWord: bad digit in word string");
    }
    w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

std::uint64_t word_to_id(const GateWord& w, int set_size) {
  std::uint64_t id = 0;
  for (auto l : w.letters) {
    if (l >= set_size) throw std::invalid_argument("word_to_id: letter out of range");
    id = id * set_size + l;
  }
  return id;
}

GateWord word_from_id(std::uint64_t id, int depth, int set_size) {
  GateWord w;
  w.letters.assign(depth, 0);
  for (int k = depth - 1; k >= 0; --k) {
    w.letters[k] = static_cast<std::uint8_t>(id % set_size);
    id /= set_size;
  }
  return w;
}

Unitary evaluate_word(const GateSet& gs, const GateWord& w) {
  Matrix acc = Matrix::Identity(gs.dim(), gs.dim());
  for (auto l : w.letters) {
    if (l >= gs.size()) {
      throw std::invalid_argument("evaluate_word: letter out of range");
    }
    acc = gs[l].mat() * acc;  // later letters multiply on the left
  }
  return Unitary(std::move(acc));
}

std::uint64_t enumeration_count(int set_size, int depth) {
  std::uint64_t n = 1;
  for (int i = 0; i < depth; ++i) {
    if (n > UINT64_MAX / set_size) throw ResourceError("enumeration_count overflow");
    n *= set_size;
  }
  return n;
}

std::uint64_t enumeration_footprint_bytes(int dim, int set_size, int depth) {
  const std::uint64_t count = enumeration_count(set_size, depth);
  const std::uint64_t per_point =
      static_cast<std::uint64_t>(dim) * dim * 16  // complex double matrix
      + static_cast<std::uint64_t>(dim) * dim * 8  // float embedding
      + 8;                                         // word id
  if (count > UINT64_MAX / per_point) throw ResourceError("footprint overflow");
  return count * per_point;
}

namespace {

void enumerate_rec(const GateSet& gs, int depth, GateWord& w,
                   std::vector<Matrix>& prefix,
                   const std::function<void(const GateWord&, const Matrix&)>& visit) {
  if (w.depth() == depth) {
    visit(w, prefix.back());
    return;
  }
  for (int l = 0; l < gs.size(); ++l) {
    w.letters.push_back(static_cast<std::uint8_t>(l));
    prefix.push_back(gs[l].mat() * prefix[prefix.size() - 1]);
    enumerate_rec(gs, depth, w, prefix, visit);
    prefix.pop_back();
    w.letters.pop_back();
  }
}

}  // namespace

void enumerate_products(
    const GateSet& gs, int depth, std::uint64_t budget_bytes,
    const std::function<void(const GateWord&, const Matrix&)>& visit) {
  if (depth < 0) throw std::invalid_argument("enumerate_products: negative depth");
  if (enumeration_footprint_bytes(gs.dim(), gs.size(), depth) > budget_bytes) {
    throw ResourceError("enumerate_products: memory budget exceeded");
  }
  GateWord w;
  std::vector<Matrix> prefix;
  prefix.reserve(depth + 1);
  prefix.push_back(Matrix::Identity(gs.dim(), gs.dim()));
  enumerate_rec(gs, depth, w, prefix, visit);
}

void enumerate_subtree(
    const GateSet& gs, int depth, std::uint8_t first_letter,
    const std::function<void(const GateWord&, const Matrix&)>& visit) {
  if (depth < 1) throw std::invalid_argument("enumerate_subtree: depth must be >= 1");
  if (first_letter >= gs.size()) {
    throw std::invalid_argument("enumerate_subtree: letter out of range");
  }
  GateWord w;
  w.letters.push_back(first_letter);
  std::vector<Matrix> prefix;
  prefix.reserve(depth + 1);
  prefix.push_back(Matrix::Identity(gs.dim(), gs.dim()));
  prefix.push_back(gs[first_letter].mat());
  enumerate_rec(gs, depth, w, prefix, visit);
}

double DepthEstimate::depth_for(double eps) const {
  if (eps <= 0.0 || eps >= 1.0) {
    throw std::invalid_argument("depth_for: eps must be in (0, 1)");
  }
  return slope * std::log10(1.0 / eps);
}

namespace {
DepthEstimate depth_law_slope(int n, int set_size, Metric metric) {
  if (n < 2 || set_size < 2) {
    throw std::invalid_argument("depth estimate: need N >= 2, |U| >= 2");
  }
  DepthEstimate e;
  e.metric = metric;
  e.slope = (static_cast<double>(n) * n - 1.0) / (2.0 * std::log10(set_size));
  return e;
}
}  // namespace

DepthEstimate theoretical_min_depth(int n, int set_size) {
  return depth_law_slope(n, set_size, Metric::infid);
}

double volume_lower_bound(int n, int set_size, double eps_f) {
  if (n < 2 || set_size < 2 || eps_f <= 0.0) {
    throw std::invalid_argument("volume_lower_bound: bad arguments");
  }
  return (static_cast<double>(n) * n - 1.0) * std::log10(1.0 / eps_f) /
         std::log10(set_size);
}

}  // namespace qcompile
