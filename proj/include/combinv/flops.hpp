#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "combinv/flop_ledger.hpp"

namespace combinv {

using BigInt = boost::multiprecision::cpp_int;

enum class FormulaId {
  S_j,
  M_j,
  I_COMBRIT_star,
  I_COMBRIT,
  phi_mul,
  phi_addsub,
  I_CRIT_m,
  CRIT_div,
  P_TF_m,
  P_UL_m,
  PERM_cmp,
  PERM_swap,
};

std::string to_string(FormulaId id);

struct FlopPrediction {
  FormulaId formula_id;
  BigInt value;
};

// 2^(j-2)
BigInt predict_sequences(long j);
// 2^(j-3) * j, for j = 2 this is 1
BigInt predict_mults_element(long j);
// beta (beta-1) (beta-2) / 6
BigInt predict_phi_mul(long beta);
// (beta-1) (beta-2) (beta-3) / 6
BigInt predict_phi_addsub(long beta);
// (m^3 - 3m^2 + 8m - 3) / 3
BigInt predict_crit_total(long m);
// m (m + 1) / 2
BigInt predict_crit_div(long m);
// m (2^m - 2) / 2
BigInt predict_combrit_star(long m);
// m (2^m + m - 1) / 2
BigInt predict_combrit(long m);
// m^3
BigInt predict_ptf(long m);
// (7m^3 - 27m^2 + 44m - 24) / 6
BigInt predict_pul(long m);
// n (n - 1) / 2 comparisons
BigInt predict_perm_cmp(long n);
// n (n - 1) column interchanges
BigInt predict_perm_swap(long n);

// 1.023 n^(log2 7) + 679.18 n^2
double crit_bound(long n);
bool within_crit_bound(const BigInt& measured, long n);

enum class FlopAlgo { Crit, CritStar, Comb, Combrit, Ptf, Pul, Perm };

FlopAlgo parse_flop_algo(const std::string& name);
std::string to_string(FlopAlgo a);

struct ComparisonRow {
  FormulaId formula_id;
  std::string algo;
  long size = 0;
  BigInt predicted;
  BigInt measured;
  BigInt delta;   // measured - predicted
  bool asserted;  // exact match expected
  bool match() const { return delta == 0; }
};

// Runs algo on a deterministic input of order m with a ledger and compares against the closed forms.
std::vector<ComparisonRow> compare_report(FlopAlgo algo, long m);
std::vector<ComparisonRow> compare_report(FlopAlgo algo, const std::vector<long>& sizes);

// Ledger of one instrumented run, exposed for tests.
FlopLedger measure(FlopAlgo algo, long m);

// Multiplications spent on entry (1, j) by the element-wise formula.
BigInt measured_mults_element(long j);

}  // namespace combinv
