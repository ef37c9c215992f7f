#pragma once

#include <cstddef>

#include "combinv/flop_ledger.hpp"
#include "combinv/matrix.hpp"

namespace combinv {

inline constexpr std::size_t kDefaultStrassenCutoff = 64;

// k = max(0, floor(log2 n) - 4), m = floor(n / 2^k) + 1, padded_n = m * 2^k.
struct StrassenPlan {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t cutoff = kDefaultStrassenCutoff;
  std::size_t padded_n = 0;

  // Levels actually recursed: at most k, and only while the size exceeds cutoff.
  std::size_t depth() const;
};

StrassenPlan make_strassen_plan(std::size_t n, std::size_t cutoff = kDefaultStrassenCutoff);

// C = A * B with k-ascending accumulation.
// Counts inner * cols * rows multiplications and (inner - 1) * cols * rows additions.
Matrix matmul_naive(const Matrix& A, const Matrix& B, FlopLedger* ledger = nullptr);

Matrix matmul_strassen(const Matrix& A, const Matrix& B, const StrassenPlan& plan, FlopLedger* ledger = nullptr);

// Square products go through Strassen with the given cutoff, others through the naive kernel.
Matrix matmul(const Matrix& A, const Matrix& B, std::size_t cutoff = kDefaultStrassenCutoff,
              FlopLedger* ledger = nullptr);

// T upper n x n times F n x p, skipping the zero region of T.
Matrix matmul_tri_full(const Matrix& T, const Matrix& F, FlopLedger* ledger = nullptr);

// U upper times L lower. When diag(L) is all zero the range starts strictly below the diagonal.
Matrix matmul_upper_lower(const Matrix& U, const Matrix& L, FlopLedger* ledger = nullptr);

}  // namespace combinv
