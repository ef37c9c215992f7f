#include "combinv/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "combinv/error.hpp"

namespace combinv {

Permutation::Permutation(std::size_t n) : map_(n) { std::iota(map_.begin(), map_.end(), std::size_t{0}); }

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) throw InvalidArgument("permutation map is not a bijection");
    seen[v] = true;
  }
}

bool Permutation::is_identity() const {
  for (std::size_t j = 0; j < map_.size(); ++j)
    if (map_[j] != j) return false;
  return true;
}

void Permutation::swap_positions(std::size_t a, std::size_t b) { std::swap(map_[a], map_[b]); }

Matrix Permutation::to_matrix() const {
  const std::size_t n = map_.size();
  Matrix P(n, n);
  for (std::size_t j = 0; j < n; ++j) P(map_[j], j) = 1.0;
  return P;
}

Permutation compose(const Permutation& p0, const Permutation& p1) {
  if (p0.size() != p1.size()) throw ShapeMismatch("compose");
  std::vector<std::size_t> m(p0.size());
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = p0[p1[j]];
  return Permutation(std::move(m));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::size_t> m(p.size());
  for (std::size_t j = 0; j < m.size(); ++j) m[p[j]] = j;
  return Permutation(std::move(m));
}

Matrix apply_columns(const Matrix& A, const Permutation& p) {
  if (A.cols() != p.size()) throw ShapeMismatch("apply_columns");
  Matrix B(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double* a = A.row(i);
    double* b = B.row(i);
    for (std::size_t j = 0; j < A.cols(); ++j) b[j] = a[p[j]];
  }
  return B;
}

Matrix apply_rows(const Permutation& p, const Matrix& X) {
  if (X.rows() != p.size()) throw ShapeMismatch("apply_rows");
  Matrix B(X.rows(), X.cols());
  for (std::size_t j = 0; j < X.rows(); ++j) std::copy_n(X.row(j), X.cols(), B.row(p[j]));
  return B;
}

Permutation extend(const Permutation& p, std::size_t n) {
  if (n < p.size()) throw ShapeMismatch("extend");
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::copy(p.map().begin(), p.map().end(), m.begin());
  return Permutation(std::move(m));
}

}  // namespace combinv
