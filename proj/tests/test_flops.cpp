#include <doctest.h>

#include <cmath>

#include "combinv/error.hpp"
#include "combinv/flops.hpp"
#include "combinv/hopscotch.hpp"
#include "combinv/triinv.hpp"
#include "support.hpp"

using namespace combinv;

namespace {

BigInt choose3(long m) { return m < 3 ? BigInt(0) : BigInt(m) * (m - 1) * (m - 2) / 6; }

// Multiplications the element-wise formula spends on (1, j): one per interior hop of every sequence.
BigInt enumerated_mults(long j) {
  BigInt total = 0;
  for (const auto& s : oracle::brute_force_sequences(1, j)) total += static_cast<unsigned long>(s.size() - 2);
  return total;
}

}  // namespace

TEST_CASE("predictor examples") {
  CHECK(predict_sequences(2) == 1);
  CHECK(predict_sequences(5) == 8);
  CHECK(predict_sequences(11) == 512);
  CHECK(predict_sequences(70) == BigInt(1) << 68);
  CHECK(predict_mults_element(2) == 1);
  CHECK(predict_mults_element(3) == 3);
  CHECK(predict_mults_element(4) == 8);
  CHECK(predict_phi_mul(2) == 0);
  CHECK(predict_phi_addsub(2) == 0);
  CHECK(predict_phi_mul(4) == 4);
  CHECK(predict_phi_addsub(4) == 1);
  CHECK(predict_phi_mul(8) == 56);
  CHECK(predict_phi_addsub(8) == 35);
  CHECK(predict_crit_total(1) == 1);
  CHECK(predict_crit_total(2) == 3);
  CHECK(predict_crit_total(6) == 51);
  CHECK(predict_crit_div(8) == 36);
  CHECK(predict_combrit_star(1) == 0);
  CHECK(predict_combrit_star(4) == 28);
  CHECK(predict_combrit(5) == 90);
  CHECK(predict_ptf(3) == 27);
  CHECK(predict_pul(2) == 2);
  CHECK(predict_perm_cmp(4) == 6);
  CHECK(predict_perm_swap(4) == 12);
}

TEST_CASE("predictors are exact at large arguments") {
  const BigInt m = 1000000007;
  CHECK(predict_ptf(1000000007) == m * m * m);
  CHECK(predict_phi_mul(1000000007) == m * (m - 1) * (m - 2) / 6);
}

TEST_CASE("sequence counts match enumeration") {
  for (long j = 2; j <= 14; ++j) CHECK(predict_sequences(j) == static_cast<unsigned long>(hopscotch_series(1, j).size()));
}

TEST_CASE("element multiplications: enumeration gives (j-2) 2^(j-3)") {
  CHECK(measured_mults_element(2) == 0);
  CHECK(measured_mults_element(3) == 1);
  for (long j = 2; j <= 14; ++j) {
    CHECK(measured_mults_element(j) == enumerated_mults(j));
    if (j >= 3) CHECK(measured_mults_element(j) == BigInt(j - 2) << (j - 3));
  }
}

TEST_CASE("CRIT* ledger: one product and one add per inner term") {
  for (long m = 1; m <= 16; ++m) {
    const FlopLedger L = measure(FlopAlgo::CritStar, m);
    CHECK(BigInt(L.mul) == choose3(m));
    CHECK(BigInt(L.mul) == predict_phi_mul(std::max(m, 2L)));
    CHECK(BigInt(L.addsub) == choose3(m));
    CHECK(L.div == 0);
  }
}

TEST_CASE("CRIT ledger") {
  for (long m = 1; m <= 16; ++m) {
    const FlopLedger L = measure(FlopAlgo::Crit, m);
    CHECK(BigInt(L.div) == predict_crit_div(m));
    CHECK(BigInt(L.mul) == choose3(m + 1));
    CHECK(BigInt(L.addsub) == choose3(m));
  }
}

TEST_CASE("triangular products and permutation ledgers") {
  for (long m = 1; m <= 16; ++m) {
    const FlopLedger t = measure(FlopAlgo::Ptf, m);
    CHECK(BigInt(t.mul + t.addsub) == predict_ptf(m));
    const FlopLedger p = measure(FlopAlgo::Perm, m);
    CHECK(BigInt(p.cmp) == predict_perm_cmp(m));
    CHECK(BigInt(p.swap) == predict_perm_swap(m));
  }
}

TEST_CASE("compare_report rows") {
  auto rows = compare_report(FlopAlgo::Crit, 8);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].formula_id == FormulaId::CRIT_div);
  CHECK(rows[0].predicted == 36);
  CHECK(rows[0].match());
  CHECK(rows[0].asserted);
  CHECK(rows[1].delta == rows[1].measured - rows[1].predicted);

  rows = compare_report(FlopAlgo::Comb, 5);
  bool saw_mj = false;
  for (const auto& r : rows) {
    if (r.formula_id == FormulaId::S_j) CHECK(r.match());
    if (r.formula_id == FormulaId::M_j) {
      saw_mj = true;
      CHECK_FALSE(r.asserted);
    }
    if (r.formula_id == FormulaId::I_COMBRIT_star) CHECK_FALSE(r.asserted);
  }
  CHECK(saw_mj);
  CHECK(compare_report(FlopAlgo::Ptf, std::vector<long>{2, 3, 4}).size() == 3);
}

TEST_CASE("CRIT total stays under the asymptotic bound") {
  CHECK(crit_bound(1) == doctest::Approx(1.023 + 679.18));
  for (long n : {32, 64, 128}) {
    const FlopLedger L = measure(FlopAlgo::Crit, n);
    CHECK(within_crit_bound(BigInt(L.total()), n));
    CHECK(static_cast<double>(L.total()) <= crit_bound(n));
  }
  CHECK_FALSE(within_crit_bound(BigInt(1) << 40, 32));
}

TEST_CASE("algorithm names") {
  for (auto a : {FlopAlgo::Crit, FlopAlgo::CritStar, FlopAlgo::Comb, FlopAlgo::Combrit, FlopAlgo::Ptf, FlopAlgo::Pul,
                 FlopAlgo::Perm})
    CHECK(parse_flop_algo(to_string(a)) == a);
  CHECK_THROWS_AS(parse_flop_algo("bogus"), InvalidArgument);
}
