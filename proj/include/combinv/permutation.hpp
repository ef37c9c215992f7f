#pragma once

#include <cstddef>
#include <vector>

#include "combinv/matrix.hpp"

namespace combinv {

// Column permutation P with (A*P)[:, j] = A[:, map[j]].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t n);  // identity
  explicit Permutation(std::vector<std::size_t> map);

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t j) const { return map_[j]; }
  const std::vector<std::size_t>& map() const { return map_; }
  bool is_identity() const;

  // Swap images of positions a and b (right-multiply by a transposition).
  void swap_positions(std::size_t a, std::size_t b);

  Matrix to_matrix() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> map_;
};

// P0 * P1.
Permutation compose(const Permutation& p0, const Permutation& p1);
Permutation inverse(const Permutation& p);

// A * P.
Matrix apply_columns(const Matrix& A, const Permutation& p);
// P * X.
Matrix apply_rows(const Permutation& p, const Matrix& X);

// Embed p into a larger identity permutation of size n.
Permutation extend(const Permutation& p, std::size_t n);

}  // namespace combinv
