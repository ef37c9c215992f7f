#include "combinv/factorize.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "combinv/error.hpp"
#include "crit_kernel.hpp"

namespace combinv {

namespace {

template <bool Augment>
SqrBundle sqr_impl(const Matrix& A, FlopLedger* ledger) {
  if (!A.square()) throw ShapeMismatch("sqr needs a square matrix");
  const std::size_t n = A.rows();
  const double tol = singularity_tolerance(A);
  Matrix W = A.transpose();  // row j holds column j of A, then q_j
  Matrix R(n, n);
  Matrix S;
  std::vector<double> d;
  std::vector<double> rcol(n);
  if constexpr (Augment) {
    S = Matrix(n, n);
    d.resize(n);
  }
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::copy_n(W.row(j), n, v.data());
    for (std::size_t i = 0; i < j; ++i) {
      const double* q = W.row(i);
      double r = 0.0;
      for (std::size_t k = 0; k < n; ++k) r += q[k] * v[k];
      R(i, j) = r;
      for (std::size_t k = 0; k < n; ++k) v[k] -= r * q[k];
    }
    double nrm = 0.0;
    for (std::size_t k = 0; k < n; ++k) nrm += v[k] * v[k];
    nrm = std::sqrt(nrm);
    if (!(nrm >= tol)) throw RankDeficient(j);
    R(j, j) = nrm;
    double* q = W.row(j);
    for (std::size_t k = 0; k < n; ++k) q[k] = v[k] / nrm;
    if (ledger) {
      ledger->mul += (2 * j + 1) * n;
      ledger->addsub += j * (2 * n - 1) + (n - 1);
      ledger->div += n;
    }

    if constexpr (Augment) {
      // Column j of S' as soon as R(:, j) is known.
      for (std::size_t p = 0; p <= j; ++p) rcol[p] = R(p, j);
      S(j, j) = 1.0;
      for (std::size_t i = 0; i < j; ++i) S(i, j) = detail::crit_scaled_entry(S.row(i), rcol.data(), 1, i, j, nrm);
      d[j] = 1.0 / nrm;
      if (ledger) {
        const std::uint64_t jj = j;
        ledger->div += jj + 1;
        ledger->mul += jj * (jj - 1) / 2;
        ledger->addsub += jj * (jj - 1) / 2;
      }
    }
  }
  SqrBundle out;
  out.Q = W.transpose();
  out.R = std::move(R);
  if constexpr (Augment) {
    for (std::size_t i = 0; i < n; ++i) {
      S(i, i) = d[i];
      for (std::size_t j = i + 1; j < n; ++j) S(i, j) = d[i] * S(i, j);
    }
    count_mul(ledger, n * (n - 1) / 2);
    out.S = std::move(S);
    out.D = diagonal(d);
  }
  return out;
}

template <bool Augment>
SkulBundle skul_impl(const Matrix& A, FlopLedger* ledger) {
  if (!A.square()) throw ShapeMismatch("skul needs a square matrix");
  const std::size_t n = A.rows();
  const double tol = singularity_tolerance(A);
  Matrix L(n, n), U = identity(n), UT = identity(n);
  Matrix S, KT;  // KT(c, k) holds the scaled K(k, c)
  std::vector<double> d;
  if constexpr (Augment) {
    S = identity(n);
    KT = identity(n);
    d.resize(n);
  }
  std::vector<double> acc(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Column k of L.
    const double* uk = UT.row(k);
    for (std::size_t i = k; i < n; ++i) {
      const double* li = L.row(i);
      double a = A(i, k);
      for (std::size_t p = 0; p < k; ++p) a -= li[p] * uk[p];
      L(i, k) = a;
    }
    const double lkk = L(k, k);
    if (!(std::abs(lkk) >= tol)) throw ZeroPivot(k);

    // Row k of U.
    const double* lk = L.row(k);
    std::copy_n(A.row(k) + k + 1, n - k - 1, acc.data() + k + 1);
    for (std::size_t p = 0; p < k; ++p) {
      const double lkp = lk[p];
      const double* up = U.row(p);
      for (std::size_t j = k + 1; j < n; ++j) acc[j] -= lkp * up[j];
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      U(k, j) = acc[j] / lkk;
      UT(j, k) = U(k, j);
    }
    if (ledger) {
      const std::uint64_t kk = k, rest = n - k - 1;
      ledger->mul += (n - k) * kk + rest * kk;
      ledger->addsub += (n - k) * kk + rest * kk;
      ledger->div += rest;
    }

    if constexpr (Augment) {
      // Column k of S = U^-1 and row k of K = L^-1.
      const double* ucol = U.data() + k;
      for (std::size_t i = 0; i < k; ++i) S(i, k) = detail::crit_star_entry(S.row(i), ucol, n, i, k);
      for (std::size_t c = 0; c < k; ++c) KT(c, k) = detail::crit_scaled_entry(KT.row(c), lk, 1, c, k, lkk);
      d[k] = 1.0 / lkk;
      if (ledger) {
        const std::uint64_t kk = k;
        const std::uint64_t tri = kk * (kk - 1) / 2;
        ledger->mul += 2 * tri;
        ledger->addsub += 2 * tri;
        ledger->div += kk + 1;
      }
    }
  }
  SkulBundle out;
  out.L = std::move(L);
  out.U = std::move(U);
  if constexpr (Augment) {
    Matrix K(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      K(c, c) = d[c];
      for (std::size_t k = c + 1; k < n; ++k) K(k, c) = d[c] * KT(c, k);
    }
    count_mul(ledger, n * (n - 1) / 2);
    out.S = std::move(S);
    out.K = std::move(K);
  }
  return out;
}

}  // namespace

SqrBundle sqr(const Matrix& A, FlopLedger* ledger) { return sqr_impl<true>(A, ledger); }
SqrBundle qr_mgs(const Matrix& A, FlopLedger* ledger) { return sqr_impl<false>(A, ledger); }
SkulBundle skul(const Matrix& A, FlopLedger* ledger) { return skul_impl<true>(A, ledger); }
SkulBundle lu_crout(const Matrix& A, FlopLedger* ledger) { return skul_impl<false>(A, ledger); }

PivotedSkul skul_pivoted(const Matrix& A) {
  if (!A.square()) throw ShapeMismatch("skul_pivoted needs a square matrix");
  const std::size_t n = A.rows();
  const double tol = singularity_tolerance(A);
  Matrix W = A;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(W(i, k)) > std::abs(W(best, k))) best = i;
    if (!(std::abs(W(best, k)) >= tol)) throw ZeroPivot(k);
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(W(k, j), W(best, j));
      std::swap(order[k], order[best]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = W(i, k) / W(k, k);
      for (std::size_t j = k; j < n; ++j) W(i, j) -= f * W(k, j);
    }
  }
  Permutation rows(order);
  Matrix PA(n, n);
  for (std::size_t k = 0; k < n; ++k) std::copy_n(A.row(order[k]), n, PA.row(k));
  return {rows, skul(PA)};
}

}  // namespace combinv
