#include "combinv/splitinv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "combinv/error.hpp"

namespace combinv {

namespace {

void check_deadline(const Deadline& deadline, const char* who) {
  if (deadline && std::chrono::steady_clock::now() > *deadline) throw Timeout(who);
}

// Perfect matching of rows to columns over entries with |a| >= tol, larger entries tried first.
std::optional<std::vector<std::size_t>> matching_assignment(const Matrix& A, double tol) {
  const std::size_t n = A.rows();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (std::abs(A(r, c)) >= tol) adj[r].push_back(c);
    std::stable_sort(adj[r].begin(), adj[r].end(),
                     [&](std::size_t x, std::size_t y) { return std::abs(A(r, x)) > std::abs(A(r, y)); });
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> row_of(n, kNone);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t r) {
    for (std::size_t c : adj[r]) {
      if (seen[c]) continue;
      seen[c] = 1;
      if (row_of[c] == kNone || augment(row_of[c])) {
        row_of[c] = r;
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < n; ++r) {
    seen.assign(n, 0);
    if (!augment(r)) return std::nullopt;
  }
  std::vector<std::size_t> map(n);
  for (std::size_t c = 0; c < n; ++c) map[row_of[c]] = c;
  return map;
}

using Grid = std::vector<std::vector<Matrix>>;

Grid to_grid(const Matrix& A, std::size_t g, std::size_t s) {
  Grid G(g, std::vector<Matrix>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) G[i][j] = A.block(i * s, j * s, s, s);
  return G;
}

Matrix from_grid(const Grid& G, std::size_t s) {
  const std::size_t g = G.size();
  Matrix A(g * s, g * s);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) A.set_block(i * s, j * s, G[i][j]);
  return A;
}

struct BlockOps {
  std::size_t s;
  std::size_t cutoff;
  FlopLedger* ledger;

  // Empty when the product is structurally zero.
  std::optional<Matrix> mul(const Matrix& X, const Matrix& Y) const {
    if (X.is_zero() || Y.is_zero()) return std::nullopt;
    if (is_identity(X)) return Y;
    if (is_identity(Y)) return X;
    return matmul(X, Y, cutoff, ledger);
  }

  void accumulate(std::optional<Matrix>& acc, std::optional<Matrix> term) const {
    if (!term) return;
    acc = acc ? add(*acc, *term, ledger) : std::move(*term);
  }

  Matrix value(std::optional<Matrix> m) const { return m ? std::move(*m) : Matrix(s, s); }
};

RsiBundle brsi_core(const Matrix& A, const BrsiOptions& opts, FlopLedger* ledger, bool keep);

Matrix invert_diagonal_block(const Matrix& B, const BrsiOptions& opts, FlopLedger* ledger) {
  if (is_upper(B)) return invert_upper_combrit(B, *opts.card, opts.combrit_base, ledger, opts.cutoff).inverse;
  return brsi_core(B, opts, ledger, false).Ainv;
}

RsiBundle brsi_core(const Matrix& A, const BrsiOptions& opts, FlopLedger* ledger, bool keep) {
  const std::size_t n = A.rows();
  if (n <= opts.base || n < opts.gamma) {
    RsiOptions ro;
    ro.tri = opts.leaf_tri;
    ro.card = opts.card;
    ro.combrit_base = opts.combrit_base;
    ro.cutoff = opts.cutoff;
    ro.keep_factors = keep;
    ro.deadline = opts.deadline;
    return rsi_invert(A, ro, ledger);
  }
  const std::size_t g = opts.gamma;
  const std::size_t s = (n + g - 1) / g;
  const std::size_t N = s * g;
  const BlockOps ops{s, opts.cutoff, ledger};

  Grid W = to_grid(pad_identity(A, N), g, s);
  Grid V(g, std::vector<Matrix>(g, Matrix(s, s)));
  for (std::size_t i = 0; i < g; ++i) V[i][i] = identity(s);
  std::vector<std::size_t> block_map(g);
  std::iota(block_map.begin(), block_map.end(), std::size_t{0});

  RsiBundle out;
  out.padded_n = N;
  std::size_t a = g;
  while (true) {
    check_deadline(opts.deadline, "brsi");
    const std::size_t iter = out.iterations++;

    // Block pivoting and diagonal block inverses.
    std::vector<Matrix> Dinv(a);
    for (std::size_t p = 0; p < a; ++p) {
      std::vector<std::pair<double, std::size_t>> cand;
      for (std::size_t c = p; c < a; ++c) {
        double score = 0.0;
        for (std::size_t t = 0; t < s; ++t) score += std::abs(W[p][c](t, t));
        cand.emplace_back(score, c);
      }
      count_cmp(ledger, a - p - 1);
      std::stable_sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
      bool done = false;
      for (const auto& [score, c] : cand) {
        try {
          Dinv[p] = invert_diagonal_block(W[p][c], opts, ledger);
        } catch (const Timeout&) {
          throw;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Numerical) throw;
          continue;
        }
        if (c != p) {
          for (std::size_t r = 0; r < g; ++r) std::swap(W[r][p], W[r][c]);
          std::swap(block_map[p], block_map[c]);
          count_swap(ledger, N * s);
        }
        done = true;
        break;
      }
      if (!done) throw BlockPivotFailed(iter);
    }

    if (keep) {
      Grid M(g, std::vector<Matrix>(g, Matrix(s, s)));
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) M[i][j] = (i < a) ? W[i][j] : (i == j ? identity(s) : Matrix(s, s));
      out.factors.push_back(from_grid(M, s));
    }

    // Inverse of the block upper part by block back substitution.
    Grid Ui(a, std::vector<Matrix>(a, Matrix(s, s)));
    for (std::size_t i = 0; i < a; ++i) Ui[i][i] = Dinv[i];
    for (std::size_t j = 1; j < a; ++j) {
      for (std::size_t i = j; i-- > 0;) {
        std::optional<Matrix> acc;
        for (std::size_t k = i + 1; k <= j; ++k) ops.accumulate(acc, ops.mul(W[i][k], Ui[k][j]));
        if (acc) Ui[i][j] = -ops.value(ops.mul(Dinv[i], *acc));
      }
    }

    // V <- M^-1 V on the active block rows.
    for (std::size_t i = 0; i < a; ++i) {
      std::vector<Matrix> row(g);
      for (std::size_t c = 0; c < g; ++c) {
        std::optional<Matrix> acc;
        for (std::size_t k = i; k < a; ++k) ops.accumulate(acc, ops.mul(Ui[i][k], V[k][c]));
        row[c] = ops.value(std::move(acc));
      }
      V[i] = std::move(row);
    }

    bool lower_zero = true;
    for (std::size_t i = 1; i < a && lower_zero; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!W[i][j].is_zero()) {
          lower_zero = false;
          break;
        }

    if (lower_zero) {
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) W[i][j] = (i == j) ? identity(s) : Matrix(s, s);
      break;
    }

    // Active block <- I + U^-1 L; its last block column becomes the identity column.
    Grid X(a, std::vector<Matrix>(a));
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) {
        std::optional<Matrix> acc;
        for (std::size_t k = std::max(i, j + 1); k < a; ++k) ops.accumulate(acc, ops.mul(Ui[i][k], W[k][j]));
        X[i][j] = ops.value(std::move(acc));
        if (i == j) X[i][j] = add(X[i][j], identity(s), nullptr);
      }
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) W[i][j] = std::move(X[i][j]);
    if (keep) out.iterates.push_back(from_grid(W, s));
    --a;
  }

  // tail = [[I, 0], [Y, Z]] is block unit lower.
  Grid Ti(g, std::vector<Matrix>(g, Matrix(s, s)));
  for (std::size_t i = 0; i < g; ++i) Ti[i][i] = identity(s);
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t i = j + 1; i < g; ++i) {
      std::optional<Matrix> acc;
      for (std::size_t k = j; k < i; ++k) ops.accumulate(acc, ops.mul(W[i][k], Ti[k][j]));
      if (acc) Ti[i][j] = -*acc;
    }
  Grid R(g, std::vector<Matrix>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t c = 0; c < g; ++c) {
      std::optional<Matrix> acc;
      for (std::size_t k = 0; k <= i; ++k) ops.accumulate(acc, ops.mul(Ti[i][k], V[k][c]));
      R[i][c] = ops.value(std::move(acc));
    }

  std::vector<std::size_t> map(N);
  for (std::size_t c = 0; c < g; ++c)
    for (std::size_t t = 0; t < s; ++t) map[c * s + t] = block_map[c] * s + t;
  out.P = Permutation(std::move(map));
  out.tail = from_grid(W, s);
  Matrix Ainv = apply_rows(out.P, from_grid(R, s));
  out.Ainv = (N == n) ? std::move(Ainv) : Ainv.block(0, 0, n, n);
  return out;
}

}  // namespace

Permutation greedy_column_pivot(const Matrix& A, double tol, FlopLedger* ledger) {
  if (!A.square()) throw ShapeMismatch("greedy_column_pivot needs a square matrix");
  const std::size_t n = A.rows();
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  for (std::size_t p = 0; p < n; ++p) {
    const double* row = A.row(p);
    std::size_t best = p;
    for (std::size_t c = p + 1; c < n; ++c)
      if (std::abs(row[map[c]]) > std::abs(row[map[best]])) best = c;
    count_cmp(ledger, n - p - 1);
    if (p + 1 < n) {
      std::swap(map[p], map[best]);
      count_swap(ledger, n);
    }
    if (!(std::abs(row[map[p]]) >= tol)) {
      auto m = matching_assignment(A, tol);
      if (!m) throw SplitFailed(p);
      return Permutation(std::move(*m));
    }
  }
  return Permutation(std::move(map));
}

SplitPair split_triangular(const Matrix& A, Side side, FlopLedger* ledger) {
  if (!A.square()) throw ShapeMismatch("split_triangular needs a square matrix");
  Permutation P = greedy_column_pivot(A, singularity_tolerance(A), ledger);
  const Matrix AP = apply_columns(A, P);
  if (side == Side::Upper) return {upper_part(AP), strict_lower_part(AP), std::move(P)};
  return {lower_part(AP), strict_upper_part(AP), std::move(P)};
}

RsiBundle rsi_invert(const Matrix& A, const RsiOptions& opts, FlopLedger* ledger) {
  if (!A.square()) throw ShapeMismatch("rsi_invert needs a square matrix");
  if (opts.tri == TriMethod::CritStar) throw InvalidArgument("rsi needs a general triangular method");
  const std::size_t n = A.rows();
  const TriInvOptions topts{opts.tri, opts.card, opts.combrit_base, opts.cutoff};
  const double tol = singularity_tolerance(A);

  RsiBundle out;
  out.padded_n = n;
  Matrix W = A;
  Matrix V = identity(n);
  bool v_identity = true;
  std::vector<std::size_t> pmap(n);
  std::iota(pmap.begin(), pmap.end(), std::size_t{0});

  // W = [[X, 0], [Y, Z]] with X the a x a active block and Z unit lower.
  std::size_t a = n;
  while (true) {
    check_deadline(opts.deadline, "rsi");
    ++out.iterations;

    const Matrix X = W.block(0, 0, a, a);
    const Permutation Pl = greedy_column_pivot(X, tol, ledger);
    if (!Pl.is_identity()) {
      Matrix Wp = W;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < a; ++j) Wp(r, j) = W(r, Pl[j]);
      W = std::move(Wp);
      std::vector<std::size_t> m(pmap);
      for (std::size_t j = 0; j < a; ++j) m[j] = pmap[Pl[j]];
      pmap = std::move(m);
    }
    const Matrix Xp = W.block(0, 0, a, a);
    const Matrix U = upper_part(Xp);
    const Matrix Ls = strict_lower_part(Xp);

    if (opts.keep_factors) {
      Matrix M = identity(n);
      M.set_block(0, 0, U);
      out.factors.push_back(std::move(M));
    }

    const Matrix Uinv = invert_upper(U, topts, ledger).inverse;

    // V <- M^-1 V, touching only the first a rows.
    if (v_identity) {
      V.set_block(0, 0, Uinv);
      v_identity = false;
    } else {
      V.set_block(0, 0, matmul_tri_full(Uinv, V.block(0, 0, a, n), ledger));
    }

    if (Ls.is_zero()) {
      W.set_block(0, 0, identity(a));
      break;
    }
    Matrix Xn = matmul_upper_lower(Uinv, Ls, ledger);
    for (std::size_t i = 0; i < a; ++i) Xn(i, i) += 1.0;
    count_addsub(ledger, a);
    W.set_block(0, 0, Xn);
    if (opts.keep_factors) out.iterates.push_back(W);
    --a;
  }

  out.tail = W;
  out.P = Permutation(pmap);
  TriInvOptions star;
  star.method = TriMethod::CritStar;
  const Matrix tail_inv = invert_lower(out.tail, star, ledger).inverse;
  out.Ainv = apply_rows(out.P, matmul(tail_inv, V, opts.cutoff, ledger));
  return out;
}

RsiBundle brsi_invert(const Matrix& A, const BrsiOptions& opts, FlopLedger* ledger) {
  if (!A.square()) throw ShapeMismatch("brsi_invert needs a square matrix");
  if (!opts.card) throw InvalidArgument("brsi needs a combinatorial card");
  if (opts.gamma < 2) throw InvalidArgument("brsi needs gamma >= 2");
  if (opts.base < 1) throw InvalidArgument("brsi needs base >= 1");
  return brsi_core(A, opts, ledger, opts.keep_factors);
}

namespace {

// g -= g[0] * pivot_row over len entries.
[[gnu::target_clones("avx2", "default")]] void eliminate_row(double* __restrict g, const double* __restrict pivot_row,
                                                            std::size_t len) {
  const double f = g[0];
  for (std::size_t j = 0; j < len; ++j) g[j] -= f * pivot_row[j];
}

}  // namespace

Matrix gauss_jordan_inverse(const Matrix& A, FlopLedger* ledger) {
  if (!A.square()) throw ShapeMismatch("gauss_jordan_inverse needs a square matrix");
  const std::size_t n = A.rows(), w = 2 * n;
  const double tol = singularity_tolerance(A);
  Matrix G(n, w);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(A.row(i), n, G.row(i));
    G(i, n + i) = 1.0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(G(i, k)) > std::abs(G(piv, k))) piv = i;
    count_cmp(ledger, n - k - 1);
    if (!(std::abs(G(piv, k)) >= tol)) throw SingularMatrix("zero pivot in column " + std::to_string(k));
    if (piv != k) {
      std::swap_ranges(G.row(k), G.row(k) + w, G.row(piv));
      count_swap(ledger, w);
    }
    double* gk = G.row(k);
    const double inv = 1.0 / gk[k];
    for (std::size_t j = k; j < w; ++j) gk[j] *= inv;
    count_div(ledger, 1);
    count_mul(ledger, w - k);
    for (std::size_t i = 0; i < n; ++i)
      if (i != k) eliminate_row(G.row(i) + k, gk + k, w - k);
    count_mul(ledger, (n - 1) * (w - k));
    count_addsub(ledger, (n - 1) * (w - k));
  }
  return G.block(0, n, n, n);
}

Matrix schur_block_inverse_2x2(const Matrix& A, std::size_t split) {
  if (!A.square() || split == 0 || split >= A.rows()) throw InvalidArgument("schur split must lie in (0, n)");
  const std::size_t n = A.rows(), m = n - split;
  const Matrix A11 = A.block(0, 0, split, split), A12 = A.block(0, split, split, m);
  const Matrix A21 = A.block(split, 0, m, split), A22 = A.block(split, split, m, m);
  const Matrix A22i = gauss_jordan_inverse(A22);
  const Matrix A12A22i = matmul_naive(A12, A22i);
  const Matrix A22iA21 = matmul_naive(A22i, A21);
  const Matrix Si = gauss_jordan_inverse(A11 - matmul_naive(A12A22i, A21));
  const Matrix B12 = -matmul_naive(Si, A12A22i);
  const Matrix B21 = -matmul_naive(A22iA21, Si);
  const Matrix B22 = A22i + matmul_naive(matmul_naive(A22iA21, Si), A12A22i);
  Matrix out(n, n);
  out.set_block(0, 0, Si);
  out.set_block(0, split, B12);
  out.set_block(split, 0, B21);
  out.set_block(split, split, B22);
  return out;
}

}  // namespace combinv
