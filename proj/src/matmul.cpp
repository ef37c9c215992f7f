#include "combinv/matmul.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <string>
#include <vector>

#include "combinv/error.hpp"

namespace combinv {

namespace {

void require_inner(const Matrix& A, const Matrix& B, const char* what) {
  if (A.cols() != B.rows())
    throw ShapeMismatch(std::string(what) + ": " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                        " times " + std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
}

using v4d = double __attribute__((vector_size(32)));

struct CView {
  const double* p;
  std::size_t ld;
  const double* row(std::size_t i) const { return p + i * ld; }
  CView block(std::size_t r, std::size_t c) const { return {p + r * ld + c, ld}; }
};

struct MView {
  double* p;
  std::size_t ld;
  double* row(std::size_t i) const { return p + i * ld; }
  MView block(std::size_t r, std::size_t c) const { return {p + r * ld + c, ld}; }
  operator CView() const { return {p, ld}; }
};

// Register-tiled C = A * B (n x p times p x q). Every entry accumulates k = 0, 1, ... in order,
// so the result matches the plain i-k-j loop bit for bit.
[[gnu::target_clones("avx2", "default")]] void naive_kernel(std::size_t n, std::size_t p, std::size_t q, CView A, CView B, MView C) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* a0 = A.row(i);
    const double* a1 = A.row(i + 1);
    const double* a2 = A.row(i + 2);
    const double* a3 = A.row(i + 3);
    std::size_t j = 0;
    for (; j + 8 <= q; j += 8) {
      v4d c00 = {}, c01 = {}, c10 = {}, c11 = {}, c20 = {}, c21 = {}, c30 = {}, c31 = {};
      for (std::size_t k = 0; k < p; ++k) {
        v4d b0, b1;
        std::memcpy(&b0, B.row(k) + j, sizeof b0);
        std::memcpy(&b1, B.row(k) + j + 4, sizeof b1);
        c00 += a0[k] * b0;
        c01 += a0[k] * b1;
        c10 += a1[k] * b0;
        c11 += a1[k] * b1;
        c20 += a2[k] * b0;
        c21 += a2[k] * b1;
        c30 += a3[k] * b0;
        c31 += a3[k] * b1;
      }
      std::memcpy(C.row(i) + j, &c00, sizeof c00);
      std::memcpy(C.row(i) + j + 4, &c01, sizeof c01);
      std::memcpy(C.row(i + 1) + j, &c10, sizeof c10);
      std::memcpy(C.row(i + 1) + j + 4, &c11, sizeof c11);
      std::memcpy(C.row(i + 2) + j, &c20, sizeof c20);
      std::memcpy(C.row(i + 2) + j + 4, &c21, sizeof c21);
      std::memcpy(C.row(i + 3) + j, &c30, sizeof c30);
      std::memcpy(C.row(i + 3) + j + 4, &c31, sizeof c31);
    }
    for (; j + 4 <= q; j += 4) {
      v4d c0 = {}, c1 = {}, c2 = {}, c3 = {};
      for (std::size_t k = 0; k < p; ++k) {
        v4d b;
        std::memcpy(&b, B.row(k) + j, sizeof b);
        c0 += a0[k] * b;
        c1 += a1[k] * b;
        c2 += a2[k] * b;
        c3 += a3[k] * b;
      }
      std::memcpy(C.row(i) + j, &c0, sizeof c0);
      std::memcpy(C.row(i + 1) + j, &c1, sizeof c1);
      std::memcpy(C.row(i + 2) + j, &c2, sizeof c2);
      std::memcpy(C.row(i + 3) + j, &c3, sizeof c3);
    }
    for (; j < q; ++j) {
      double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        const double b = B.row(k)[j];
        c0 += a0[k] * b;
        c1 += a1[k] * b;
        c2 += a2[k] * b;
        c3 += a3[k] * b;
      }
      C.row(i)[j] = c0;
      C.row(i + 1)[j] = c1;
      C.row(i + 2)[j] = c2;
      C.row(i + 3)[j] = c3;
    }
  }
  for (; i < n; ++i) {
    const double* a = A.row(i);
    double* c = C.row(i);
    std::size_t j = 0;
    for (; j + 8 <= q; j += 8) {
      v4d c0 = {}, c1 = {};
      for (std::size_t k = 0; k < p; ++k) {
        v4d b0, b1;
        std::memcpy(&b0, B.row(k) + j, sizeof b0);
        std::memcpy(&b1, B.row(k) + j + 4, sizeof b1);
        c0 += a[k] * b0;
        c1 += a[k] * b1;
      }
      std::memcpy(c + j, &c0, sizeof c0);
      std::memcpy(c + j + 4, &c1, sizeof c1);
    }
    for (; j < q; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < p; ++k) acc += a[k] * B.row(k)[j];
      c[j] = acc;
    }
  }
}

// out = x + sign * y on an h x h block.
[[gnu::target_clones("avx2", "default")]] void combine(std::size_t h, CView x, CView y, double sign, MView out) {
  for (std::size_t i = 0; i < h; ++i) {
    const double* __restrict a = x.row(i);
    const double* __restrict b = y.row(i);
    double* __restrict o = out.row(i);
    if (sign > 0)
      for (std::size_t j = 0; j < h; ++j) o[j] = a[j] + b[j];
    else
      for (std::size_t j = 0; j < h; ++j) o[j] = a[j] - b[j];
  }
}

void assign(std::size_t h, CView x, MView out) {
  for (std::size_t i = 0; i < h; ++i) std::copy(x.row(i), x.row(i) + h, out.row(i));
}

void accumulate(std::size_t h, CView x, double sign, MView out) { combine(h, out, x, sign, out); }

struct StrassenWork {
  std::vector<std::vector<double>> levels;  // per level: TA, TB, M, each h x h
  std::uint64_t adds = 0;
  std::uint64_t leaf_mul = 0;
  std::uint64_t leaf_add = 0;
};

void strassen_rec(std::size_t s, CView A, CView B, MView C, std::size_t levels, std::size_t depth,
                  StrassenWork& w) {
  if (levels == 0) {
    naive_kernel(s, s, s, A, B, C);
    const std::uint64_t s3 = static_cast<std::uint64_t>(s) * s * s;
    w.leaf_mul += s3;
    w.leaf_add += s3 - static_cast<std::uint64_t>(s) * s;
    return;
  }
  const std::size_t h = s / 2;
  double* base = w.levels[depth].data();
  const MView TA{base, h}, TB{base + h * h, h}, M{base + 2 * h * h, h};
  const CView A11 = A.block(0, 0), A12 = A.block(0, h), A21 = A.block(h, 0), A22 = A.block(h, h);
  const CView B11 = B.block(0, 0), B12 = B.block(0, h), B21 = B.block(h, 0), B22 = B.block(h, h);
  const MView C11 = C.block(0, 0), C12 = C.block(0, h), C21 = C.block(h, 0), C22 = C.block(h, h);
  const std::size_t l = levels - 1, d = depth + 1;

  // The quadrants collect the seven products in the order
  // C11 = M1 + M4 - M5 + M7, C12 = M3 + M5, C21 = M2 + M4, C22 = M1 - M2 + M3 + M6.
  combine(h, A11, A22, 1, TA);
  combine(h, B11, B22, 1, TB);
  strassen_rec(h, TA, TB, M, l, d, w);
  assign(h, M, C11);
  assign(h, M, C22);

  combine(h, A21, A22, 1, TA);
  strassen_rec(h, TA, B11, M, l, d, w);
  assign(h, M, C21);
  accumulate(h, M, -1, C22);

  combine(h, B12, B22, -1, TB);
  strassen_rec(h, A11, TB, M, l, d, w);
  assign(h, M, C12);
  accumulate(h, M, 1, C22);

  combine(h, B21, B11, -1, TB);
  strassen_rec(h, A22, TB, M, l, d, w);
  accumulate(h, M, 1, C11);
  accumulate(h, M, 1, C21);

  combine(h, A11, A12, 1, TA);
  strassen_rec(h, TA, B22, M, l, d, w);
  accumulate(h, M, -1, C11);
  accumulate(h, M, 1, C12);

  combine(h, A21, A11, -1, TA);
  combine(h, B11, B12, 1, TB);
  strassen_rec(h, TA, TB, M, l, d, w);
  accumulate(h, M, 1, C22);

  combine(h, A12, A22, -1, TA);
  combine(h, B21, B22, 1, TB);
  strassen_rec(h, TA, TB, M, l, d, w);
  accumulate(h, M, 1, C11);

  w.adds += 18 * static_cast<std::uint64_t>(h) * h;
}

}  // namespace

std::size_t StrassenPlan::depth() const {
  if (n <= cutoff) return 0;
  std::size_t d = 0;
  std::size_t s = padded_n;
  while (d < k && s > cutoff && s % 2 == 0) {
    s /= 2;
    ++d;
  }
  return d;
}

StrassenPlan make_strassen_plan(std::size_t n, std::size_t cutoff) {
  if (n == 0) throw InvalidArgument("Strassen plan needs n >= 1");
  StrassenPlan p;
  p.n = n;
  p.cutoff = std::max<std::size_t>(cutoff, 1);
  const std::size_t lg = std::bit_width(n) - 1;
  p.k = lg > 4 ? lg - 4 : 0;
  p.m = (n >> p.k) + 1;
  p.padded_n = p.m << p.k;
  return p;
}

Matrix matmul_naive(const Matrix& A, const Matrix& B, FlopLedger* ledger) {
  require_inner(A, B, "matmul_naive");
  Matrix C(A.rows(), B.cols());
  if (C.rows() && C.cols())
    naive_kernel(A.rows(), A.cols(), B.cols(), {A.data(), A.cols()}, {B.data(), B.cols()}, {C.data(), C.cols()});
  const std::uint64_t p = A.cols();
  count_mul(ledger, A.rows() * B.cols() * p);
  count_addsub(ledger, A.rows() * B.cols() * (p ? p - 1 : 0));
  return C;
}

Matrix matmul_strassen(const Matrix& A, const Matrix& B, const StrassenPlan& plan, FlopLedger* ledger) {
  require_inner(A, B, "matmul_strassen");
  if (!A.square() || !B.square() || A.rows() != plan.n) throw ShapeMismatch("matmul_strassen needs square n x n");
  const std::size_t d = plan.depth();
  if (d == 0) return matmul_naive(A, B, ledger);
  const std::size_t N = plan.padded_n;
  const Matrix Ap = pad_zero(A, N, N), Bp = pad_zero(B, N, N);
  StrassenWork w;
  for (std::size_t l = 0, h = N / 2; l < d; ++l, h /= 2) w.levels.emplace_back(3 * h * h);
  Matrix C(N, N);
  strassen_rec(N, {Ap.data(), N}, {Bp.data(), N}, {C.data(), N}, d, 0, w);
  count_mul(ledger, w.leaf_mul);
  count_addsub(ledger, w.leaf_add + w.adds);
  return N == plan.n ? C : C.block(0, 0, plan.n, plan.n);
}

Matrix matmul(const Matrix& A, const Matrix& B, std::size_t cutoff, FlopLedger* ledger) {
  if (A.square() && B.square() && A.rows() == B.rows())
    return matmul_strassen(A, B, make_strassen_plan(A.rows(), cutoff), ledger);
  return matmul_naive(A, B, ledger);
}

Matrix matmul_tri_full(const Matrix& T, const Matrix& F, FlopLedger* ledger) {
  if (!T.square()) throw ShapeMismatch("matmul_tri_full needs square T");
  require_inner(T, F, "matmul_tri_full");
  const std::size_t n = T.rows(), p = F.cols();
  Matrix C(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    double* __restrict c = C.row(i);
    const double* t = T.row(i);
    for (std::size_t k = i; k < n; ++k) {
      const double tik = t[k];
      const double* __restrict f = F.row(k);
      for (std::size_t j = 0; j < p; ++j) c[j] += tik * f[j];
    }
    count_mul(ledger, (n - i) * p);
    count_addsub(ledger, (n - i - 1) * p);
  }
  return C;
}

Matrix matmul_upper_lower(const Matrix& U, const Matrix& L, FlopLedger* ledger) {
  if (!U.square() || !L.square() || U.rows() != L.rows()) throw ShapeMismatch("matmul_upper_lower");
  const std::size_t n = U.rows();
  bool zero_diag = true;
  for (std::size_t i = 0; i < n; ++i)
    if (L(i, i) != 0.0) zero_diag = false;
  const std::size_t shift = zero_diag ? 1 : 0;
  Matrix C(n, n);
  // For each (i, j) the sum runs over k >= max(i, j + shift) in ascending order.
  for (std::size_t i = 0; i < n; ++i) {
    double* __restrict c = C.row(i);
    const double* u = U.row(i);
    for (std::size_t k = i; k < n; ++k) {
      const double uik = u[k];
      const double* __restrict l = L.row(k);
      const std::size_t jend = k + 1 - shift;
      for (std::size_t j = 0; j < jend; ++j) c[j] += uik * l[j];
    }
  }
  if (ledger) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k0 = std::max(i, j + shift);
        if (k0 >= n) continue;
        ledger->mul += n - k0;
        ledger->addsub += n - k0 - 1;
      }
  }
  return C;
}

}  // namespace combinv
