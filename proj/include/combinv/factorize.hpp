#pragma once

#include "combinv/flop_ledger.hpp"
#include "combinv/matrix.hpp"
#include "combinv/permutation.hpp"

namespace combinv {

// Q R = A, S = R^-1, D = diag(1 / R(j, j)).
struct SqrBundle {
  Matrix Q;
  Matrix R;
  Matrix S;
  Matrix D;
};

// L U = A with U unit upper, S = U^-1, K = L^-1.
struct SkulBundle {
  Matrix L;
  Matrix U;
  Matrix S;
  Matrix K;
};

// Modified Gram-Schmidt with the columns of S = R^-1 filled as R grows.
SqrBundle sqr(const Matrix& A, FlopLedger* ledger = nullptr);
// Crout LU without pivoting, S and K filled as U and L grow.
SkulBundle skul(const Matrix& A, FlopLedger* ledger = nullptr);

// Same code paths with the inverse updates compiled out. S, K, D stay empty.
SqrBundle qr_mgs(const Matrix& A, FlopLedger* ledger = nullptr);
SkulBundle lu_crout(const Matrix& A, FlopLedger* ledger = nullptr);

// Row partial pivoting chosen by a scratch elimination, then skul on P^T A.
// rows[k] is the original row placed at position k.
struct PivotedSkul {
  Permutation rows;
  SkulBundle bundle;
};
PivotedSkul skul_pivoted(const Matrix& A);

}  // namespace combinv
