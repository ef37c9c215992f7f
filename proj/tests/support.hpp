#pragma once

// Independent reference implementations used as test oracles. Nothing here calls the
// library's numerical routines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "combinv/matrix.hpp"
#include "combinv/matrix_io.hpp"

namespace oracle {

using combinv::Matrix;

inline std::string fixture(const std::string& name) { return std::string(COMBINV_FIXTURES) + "/" + name; }

inline Matrix load_fixture(const std::string& name) { return combinv::load_matrix(fixture(name)); }

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix to_int(const Matrix& A) {
  IntMatrix M(A.rows(), std::vector<std::int64_t>(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) M[i][j] = static_cast<std::int64_t>(A(i, j));
  return M;
}

inline Matrix from_int(const IntMatrix& M) {
  Matrix A(M.size(), M.empty() ? 0 : M[0].size());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = static_cast<double>(M[i][j]);
  return A;
}

// Inverse of a unit upper integer matrix by column back substitution, exact in int64.
inline IntMatrix unit_upper_inverse(const IntMatrix& T) {
  const std::size_t n = T.size();
  IntMatrix S(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    S[c][c] = 1;
    for (std::size_t r = c; r-- > 0;) {
      std::int64_t acc = 0;
      for (std::size_t k = r + 1; k <= c; ++k) acc += T[r][k] * S[k][c];
      S[r][c] = -acc;
    }
  }
  return S;
}

inline IntMatrix int_product(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t n = A.size(), p = B.size(), q = B[0].size();
  IntMatrix C(n, std::vector<std::int64_t>(q, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t k = 0; k < p; ++k) C[i][j] += A[i][k] * B[k][j];
  return C;
}

// Unit upper with integer entries in [-lim, lim].
inline Matrix random_int_unit_upper(std::size_t n, int lim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-lim, lim);
  Matrix T(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    T(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) T(i, j) = d(rng);
  }
  return T;
}

inline Matrix random_dense(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix A(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A(i, j) = u(rng);
  return A;
}

// Upper with off-diagonal U(-1,1)/n and |diag| in [0.5, 2].
inline Matrix random_upper(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), mag(0.5, 2.0);
  Matrix R(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    R(i, i) = (u(rng) < 0 ? -1.0 : 1.0) * mag(rng);
    for (std::size_t j = i + 1; j < n; ++j) R(i, j) = u(rng) / static_cast<double>(n);
  }
  return R;
}

inline Matrix random_diag_dominant(std::size_t n, std::mt19937_64& rng) {
  Matrix A = random_dense(n, n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s += std::abs(A(i, j));
    A(i, i) = s + 1.0;
  }
  return A;
}

inline Matrix random_spd(std::size_t n, std::mt19937_64& rng) {
  const Matrix B = random_dense(n, n, rng);
  Matrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += B(k, i) * B(k, j);
      A(i, j) = s;
    }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) A(j, i) = A(i, j);
    A(i, i) += static_cast<double>(n);
  }
  return A;
}

// Triple loop in long double.
inline Matrix product(const Matrix& A, const Matrix& B) {
  Matrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < A.cols(); ++k) s += static_cast<long double>(A(i, k)) * B(k, j);
      C(i, j) = static_cast<double>(s);
    }
  return C;
}

// Gauss-Jordan with complete pivoting in long double.
inline Matrix inverse(const Matrix& A) {
  const std::size_t n = A.rows();
  std::vector<std::vector<long double>> G(n, std::vector<long double>(2 * n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) G[i][j] = A(i, j);
    G[i][n + i] = 1.0L;
  }
  std::vector<std::size_t> colperm(n);
  for (std::size_t j = 0; j < n; ++j) colperm[j] = j;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::fabs(G[i][j]) > std::fabs(G[pr][pc])) {
          pr = i;
          pc = j;
        }
    std::swap(G[k], G[pr]);
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(G[i][k], G[i][pc]);
      std::swap(colperm[k], colperm[pc]);
    }
    const long double piv = G[k][k];
    for (auto& v : G[k]) v /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const long double f = G[i][k];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) G[i][j] -= f * G[k][j];
    }
  }
  // Columns were permuted: (A Pc)^-1 = Pc^T A^-1, so row k of the result is row colperm[k] of A^-1.
  Matrix X(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) X(colperm[k], j) = static_cast<double>(G[k][n + j]);
  return X;
}

inline Matrix inverse_2x2(const Matrix& A) {
  const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
  const double det = a * d - b * c;
  return Matrix{{d / det, -b / det}, {-c / det, a / det}};
}

// Sequences from a to b as sets of strictly increasing index lists, via every subset of (a, b).
inline std::set<std::vector<long>> brute_force_sequences(long a, long b) {
  std::set<std::vector<long>> out;
  if (a == b) return out;
  const long w = b - a - 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
    std::vector<long> s{a};
    for (long t = 0; t < w; ++t)
      if (mask >> t & 1) s.push_back(a + 1 + t);
    s.push_back(b);
    out.insert(s);
  }
  return out;
}

inline double max_abs_diff(const Matrix& A, const Matrix& B) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.values().size(); ++i) m = std::max(m, std::abs(A.values()[i] - B.values()[i]));
  return m;
}

inline double max_abs(const Matrix& A) {
  double m = 0.0;
  for (double v : A.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double rel_frobenius(const Matrix& A, const Matrix& B) {
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i < A.values().size(); ++i) {
    const long double d = static_cast<long double>(A.values()[i]) - B.values()[i];
    num += d * d;
    den += static_cast<long double>(B.values()[i]) * B.values()[i];
  }
  return static_cast<double>(std::sqrt(num) / std::max(std::sqrt(den), 1e-300L));
}

}  // namespace oracle
