#pragma once

#include <cstddef>

namespace combinv::detail {

// Row-scaled inverse entry S'(i, j) for i < j, with S'(i, i) = 1:
//   S'(i, j) = -(R(i, j) + sum_{p=i+1}^{j-1} S'(i, p) R(p, j)) / R(j, j)
// srow is row i of S', rcol[p * stride] is R(p, j).
// Shared by CRIT and the augmented factorizations so they agree bitwise.
inline double crit_scaled_entry(const double* srow, const double* rcol, std::size_t stride, std::size_t i,
                                std::size_t j, double rjj) {
  double acc = rcol[i * stride];
  for (std::size_t p = i + 1; p < j; ++p) acc += srow[p] * rcol[p * stride];
  return -acc / rjj;
}

// Unit-diagonal variant, no division.
inline double crit_star_entry(const double* srow, const double* tcol, std::size_t stride, std::size_t i,
                              std::size_t j) {
  double acc = tcol[i * stride];
  for (std::size_t p = i + 1; p < j; ++p) acc += srow[p] * tcol[p * stride];
  return -acc;
}

}  // namespace combinv::detail
