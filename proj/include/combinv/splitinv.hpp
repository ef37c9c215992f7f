#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "combinv/flop_ledger.hpp"
#include "combinv/hopscotch.hpp"
#include "combinv/matmul.hpp"
#include "combinv/matrix.hpp"
#include "combinv/permutation.hpp"
#include "combinv/triinv.hpp"

namespace combinv {

enum class Side { Upper, Lower };

// M + N = A * P, M triangular on `side` with nonzero diagonal, N the strict complement.
struct SplitPair {
  Matrix M;
  Matrix N;
  Permutation P;
};

// Greedy column choice: for each diagonal position in order, the remaining column with the
// largest |entry| (lowest index on ties). Counts n(n-1)/2 comparisons and n(n-1) element swaps.
// If greedy runs into a negligible pivot, an augmenting-path matching over the non-negligible
// entries is used instead, preferring large entries.
Permutation greedy_column_pivot(const Matrix& A, double tol, FlopLedger* ledger = nullptr);

SplitPair split_triangular(const Matrix& A, Side side, FlopLedger* ledger = nullptr);

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// A * P = (M_0 M_1 ... M_r) * tail, Ainv = P * tail^-1 * M_r^-1 ... M_0^-1.
struct RsiBundle {
  std::vector<Matrix> factors;   // M_l, kept on request
  std::vector<Matrix> iterates;  // working matrix after each iteration, kept on request
  Matrix tail;
  Permutation P;
  Matrix Ainv;
  std::size_t iterations = 0;
  std::size_t padded_n = 0;
};

struct RsiOptions {
  TriMethod tri = TriMethod::Crit;      // inversion of the triangular part
  const HopscotchCard* card = nullptr;  // needed when tri is Combrit
  std::size_t combrit_base = 0;         // 0 means card beta
  std::size_t cutoff = kDefaultStrassenCutoff;
  bool keep_factors = false;
  Deadline deadline;
};

RsiBundle rsi_invert(const Matrix& A, const RsiOptions& opts = {}, FlopLedger* ledger = nullptr);

struct BrsiOptions {
  std::size_t gamma = 2;
  const HopscotchCard* card = nullptr;  // required; COMBRIT for block-triangular diagonal blocks
  std::size_t base = 16;                // at or below this size the leaf is element-wise RSI
  TriMethod leaf_tri = TriMethod::Crit;  // triangular method inside the RSI leaf
  std::size_t combrit_base = 0;         // 0 means card beta
  std::size_t cutoff = kDefaultStrassenCutoff;
  bool keep_factors = false;
  Deadline deadline;
};

RsiBundle brsi_invert(const Matrix& A, const BrsiOptions& opts, FlopLedger* ledger = nullptr);

// Closed-form 2x2 block inverse through the Schur complement A11 - A12 A22^-1 A21.
Matrix schur_block_inverse_2x2(const Matrix& A, std::size_t split);

// Gauss-Jordan on [A | I] with partial pivoting.
Matrix gauss_jordan_inverse(const Matrix& A, FlopLedger* ledger = nullptr);

}  // namespace combinv
