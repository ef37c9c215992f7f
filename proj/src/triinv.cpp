#include "combinv/triinv.hpp"

#include <cmath>
#include <vector>

#include "combinv/error.hpp"
#include "crit_kernel.hpp"

namespace combinv {

namespace {

TriInvResult finish(Matrix inv, FlopLedger* ledger, const FlopLedger& before) {
  TriInvResult r{std::move(inv), std::nullopt};
  if (ledger) r.ledger = *ledger - before;
  return r;
}

FlopLedger snapshot(const FlopLedger* ledger) { return ledger ? *ledger : FlopLedger{}; }

void require_unit_upper(const Matrix& T, const char* who) {
  if (!has_shape(T, TriangularShape::UpperUnit)) throw InvalidArgument(std::string(who) + " needs a unit upper triangular matrix");
}

void require_upper(const Matrix& R, const char* who) {
  if (!is_upper(R)) throw InvalidArgument(std::string(who) + " needs an upper triangular matrix");
}

void check_diagonal(const Matrix& R) {
  const double tol = singularity_tolerance(R);
  for (std::size_t i = 0; i < R.rows(); ++i)
    if (std::abs(R(i, i)) < tol) throw SingularDiagonal(i);
}

Matrix unit_combinatorial(const Matrix& T, const HopscotchCard& card, FlopLedger* ledger) {
  const std::size_t n = T.rows();
  if (n > card.beta() && n > 1) throw CardTooSmall(n, card.beta());
  Matrix S = identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) S(i, j) = combinatorial_element(T, card, i, j, ledger);
  return S;
}

Matrix general_combinatorial(const Matrix& R, const HopscotchCard& card, FlopLedger* ledger) {
  const std::size_t n = R.rows();
  const DiagUnitSplit du = split_diag_unit(R, ledger);
  Matrix S = unit_combinatorial(du.Tunit, card, ledger);
  std::vector<double> dinv(n);
  for (std::size_t j = 0; j < n; ++j) dinv[j] = 1.0 / du.D(j, j);
  count_div(ledger, n);
  for (std::size_t i = 0; i < n; ++i) {
    S(i, i) = dinv[i];
    for (std::size_t j = i + 1; j < n; ++j) S(i, j) *= dinv[j];
  }
  count_mul(ledger, n * (n - 1) / 2);
  return S;
}

Matrix crit(const Matrix& R, FlopLedger* ledger) {
  const std::size_t n = R.rows();
  Matrix S(n, n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = 1.0 / R(i, i);
    S(i, i) = 1.0;
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double* rcol = R.data() + j;
    for (std::size_t i = 0; i < j; ++i) S(i, j) = detail::crit_scaled_entry(S.row(i), rcol, n, i, j, R(j, j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    S(i, i) = d[i];
    for (std::size_t j = i + 1; j < n; ++j) S(i, j) = d[i] * S(i, j);
  }
  if (ledger) {
    const std::uint64_t m = n;
    const std::uint64_t phi = m * (m - 1) * (m - 2) / 6;  // sum over offsets of (offset - 1)
    ledger->div += m * (m + 1) / 2;
    ledger->mul += phi + m * (m - 1) / 2;
    ledger->addsub += phi;
  }
  return S;
}

Matrix crit_star(const Matrix& T, FlopLedger* ledger) {
  const std::size_t n = T.rows();
  Matrix S = identity(n);
  for (std::size_t j = 1; j < n; ++j) {
    const double* tcol = T.data() + j;
    for (std::size_t i = 0; i < j; ++i) S(i, j) = detail::crit_star_entry(S.row(i), tcol, n, i, j);
  }
  if (ledger) {
    const std::uint64_t m = n;
    const std::uint64_t phi = m * (m - 1) * (m - 2) / 6;
    ledger->mul += phi;
    ledger->addsub += phi;
  }
  return S;
}

struct CombritContext {
  const HopscotchCard& card;
  std::size_t base;
  std::size_t cutoff;
  FlopLedger* ledger;
};

// Block product along one sequence, left to right. Empty when some factor is a zero block.
std::optional<Matrix> sequence_product(const std::vector<std::vector<Matrix>>& B, const HopscotchSequence& seq,
                                       std::size_t shift, const CombritContext& ctx) {
  const auto& ix = seq.indices;
  for (std::size_t l = 0; l + 1 < ix.size(); ++l)
    if (B[ix[l] - 1 + shift][ix[l + 1] - 1 + shift].is_zero()) return std::nullopt;
  Matrix P = B[ix[0] - 1 + shift][ix[1] - 1 + shift];
  for (std::size_t l = 1; l + 1 < ix.size(); ++l)
    P = matmul(P, B[ix[l] - 1 + shift][ix[l + 1] - 1 + shift], ctx.cutoff, ctx.ledger);
  return P;
}

Matrix combrit_rec(const Matrix& A, std::size_t offset, const CombritContext& ctx) {
  const std::size_t n = A.rows();
  if (n <= ctx.base) {
    try {
      if (n <= ctx.card.beta()) return general_combinatorial(A, ctx.card, ctx.ledger);
      return crit(A, ctx.ledger);
    } catch (const SingularDiagonal& e) {
      throw SingularDiagonal(offset + e.index());
    }
  }
  const std::size_t beta = ctx.card.beta();
  const std::size_t s = n / beta;

  std::vector<Matrix> iD(beta);
  for (std::size_t i = 0; i < beta; ++i) iD[i] = combrit_rec(A.block(i * s, i * s, s, s), offset + i * s, ctx);

  std::vector<std::vector<Matrix>> B(beta, std::vector<Matrix>(beta));
  for (std::size_t i = 0; i < beta; ++i)
    for (std::size_t j = i + 1; j < beta; ++j) {
      const Matrix Aij = A.block(i * s, j * s, s, s);
      B[i][j] = Aij.is_zero() ? Aij : matmul(iD[i], Aij, ctx.cutoff, ctx.ledger);
    }

  Matrix inv(n, n);
  for (std::size_t i = 0; i < beta; ++i) inv.set_block(i * s, i * s, iD[i]);
  for (std::size_t i = 0; i < beta; ++i) {
    for (std::size_t j = i + 1; j < beta; ++j) {
      std::optional<Matrix> acc;
      for (const auto& seq : ctx.card.series(j - i + 1)) {
        std::optional<Matrix> term = sequence_product(B, seq, i, ctx);
        if (!term) continue;
        if (!acc) {
          acc = seq.sign() < 0 ? -*term : std::move(*term);
        } else {
          acc = seq.sign() < 0 ? sub(*acc, *term, ctx.ledger) : add(*acc, *term, ctx.ledger);
        }
      }
      if (!acc) continue;
      inv.set_block(i * s, j * s, is_identity(iD[j]) ? *acc : matmul(*acc, iD[j], ctx.cutoff, ctx.ledger));
    }
  }
  return inv;
}

}  // namespace

TriMethod parse_tri_method(const std::string& name) {
  if (name == "comb") return TriMethod::Combinatorial;
  if (name == "crit-star") return TriMethod::CritStar;
  if (name == "crit") return TriMethod::Crit;
  if (name == "combrit") return TriMethod::Combrit;
  throw InvalidArgument("unknown triangular method '" + name + "'");
}

std::string to_string(TriMethod m) {
  switch (m) {
    case TriMethod::Combinatorial: return "comb";
    case TriMethod::CritStar: return "crit-star";
    case TriMethod::Crit: return "crit";
    case TriMethod::Combrit: return "combrit";
  }
  return "?";
}

double combinatorial_element(const Matrix& T, const HopscotchCard& card, std::size_t i, std::size_t j,
                             FlopLedger* ledger) {
  if (i >= j || j >= T.rows()) throw InvalidArgument("combinatorial_element needs i < j < n");
  const std::size_t width = j - i + 1;
  if (width > card.beta()) throw CardTooSmall(width, card.beta());
  double acc = 0.0;
  bool first = true;
  std::uint64_t muls = 0;
  for (const auto& seq : card.series(width)) {
    const auto& ix = seq.indices;
    // Card indices are 1-based from 1; translate to row i.
    double p = T(ix[0] - 1 + i, ix[1] - 1 + i);
    for (std::size_t l = 1; l + 1 < ix.size(); ++l) p *= T(ix[l] - 1 + i, ix[l + 1] - 1 + i);
    muls += ix.size() - 2;
    if (first) {
      acc = seq.sign() < 0 ? -p : p;
      first = false;
    } else if (seq.sign() < 0) {
      acc -= p;
    } else {
      acc += p;
    }
  }
  count_mul(ledger, muls);
  count_addsub(ledger, card.series(width).size() - 1);
  return acc;
}

TriInvResult invert_unit_upper_combinatorial(const Matrix& T, const HopscotchCard& card, FlopLedger* ledger) {
  require_unit_upper(T, "invert_unit_upper_combinatorial");
  const FlopLedger before = snapshot(ledger);
  return finish(unit_combinatorial(T, card, ledger), ledger, before);
}

TriInvResult invert_upper_combinatorial(const Matrix& R, const HopscotchCard& card, FlopLedger* ledger) {
  require_upper(R, "invert_upper_combinatorial");
  if (R.rows() > card.beta() && R.rows() > 1) throw CardTooSmall(R.rows(), card.beta());
  check_diagonal(R);
  const FlopLedger before = snapshot(ledger);
  return finish(general_combinatorial(R, card, ledger), ledger, before);
}

TriInvResult invert_unit_upper_crit_star(const Matrix& T, FlopLedger* ledger) {
  require_unit_upper(T, "invert_unit_upper_crit_star");
  const FlopLedger before = snapshot(ledger);
  return finish(crit_star(T, ledger), ledger, before);
}

TriInvResult invert_upper_crit(const Matrix& R, FlopLedger* ledger) {
  require_upper(R, "invert_upper_crit");
  check_diagonal(R);
  const FlopLedger before = snapshot(ledger);
  return finish(crit(R, ledger), ledger, before);
}

std::size_t combrit_padded_size(std::size_t n, std::size_t beta, std::size_t base) {
  if (beta < 2 || base < 1) throw InvalidArgument("combrit needs beta >= 2 and base >= 1");
  std::size_t N = base;
  while (N < n) N *= beta;
  return N;
}

TriInvResult invert_upper_combrit(const Matrix& A, const HopscotchCard& card, std::size_t base, FlopLedger* ledger,
                                  std::size_t cutoff) {
  require_upper(A, "invert_upper_combrit");
  check_diagonal(A);
  if (base == 0) base = card.beta();
  const std::size_t n = A.rows();
  const std::size_t N = combrit_padded_size(n, card.beta(), base);
  const FlopLedger before = snapshot(ledger);
  const CombritContext ctx{card, base, cutoff, ledger};
  Matrix inv = combrit_rec(pad_identity(A, N), 0, ctx);
  if (N != n) inv = inv.block(0, 0, n, n);
  return finish(std::move(inv), ledger, before);
}

TriInvResult invert_upper(const Matrix& R, const TriInvOptions& opts, FlopLedger* ledger) {
  auto need_card = [&]() -> const HopscotchCard& {
    if (!opts.card) throw InvalidArgument(to_string(opts.method) + " needs a combinatorial card");
    return *opts.card;
  };
  switch (opts.method) {
    case TriMethod::Combinatorial:
      if (has_shape(R, TriangularShape::UpperUnit)) return invert_unit_upper_combinatorial(R, need_card(), ledger);
      return invert_upper_combinatorial(R, need_card(), ledger);
    case TriMethod::CritStar: return invert_unit_upper_crit_star(R, ledger);
    case TriMethod::Crit: return invert_upper_crit(R, ledger);
    case TriMethod::Combrit: return invert_upper_combrit(R, need_card(), opts.base, ledger, opts.cutoff);
  }
  throw InvalidArgument("unknown triangular method");
}

TriInvResult invert_lower(const Matrix& L, const TriInvOptions& opts, FlopLedger* ledger) {
  if (!is_lower(L)) throw InvalidArgument("invert_lower needs a lower triangular matrix");
  TriInvResult r = invert_upper(L.transpose(), opts, ledger);
  r.inverse = r.inverse.transpose();
  return r;
}

}  // namespace combinv
