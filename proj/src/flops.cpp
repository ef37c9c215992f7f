#include "combinv/flops.hpp"

#include <bit>
#include <cmath>

#include "combinv/error.hpp"
#include "combinv/hopscotch.hpp"
#include "combinv/matmul.hpp"
#include "combinv/random.hpp"
#include "combinv/splitinv.hpp"
#include "combinv/triinv.hpp"

namespace combinv {

namespace {

constexpr std::uint64_t kSeed = 20240607;

BigInt pow2(long e) {
  if (e < 0) throw InvalidArgument("negative exponent");
  if (e > 4096) throw CountOverflow("2^" + std::to_string(e));
  BigInt r = 1;
  r <<= static_cast<unsigned>(e);
  return r;
}

void require_at_least(long v, long lo, const char* what) {
  if (v < lo) throw InvalidArgument(std::string(what) + " needs argument >= " + std::to_string(lo));
}

ComparisonRow row(FormulaId id, FlopAlgo algo, long m, BigInt predicted, BigInt measured, bool asserted) {
  ComparisonRow r;
  r.formula_id = id;
  r.algo = to_string(algo);
  r.size = m;
  r.delta = measured - predicted;
  r.predicted = std::move(predicted);
  r.measured = std::move(measured);
  r.asserted = asserted;
  return r;
}

BigInt big(std::uint64_t v) { return BigInt(v); }

}  // namespace

std::string to_string(FormulaId id) {
  switch (id) {
    case FormulaId::S_j: return "S_j";
    case FormulaId::M_j: return "M_j";
    case FormulaId::I_COMBRIT_star: return "I_COMBRIT_star";
    case FormulaId::I_COMBRIT: return "I_COMBRIT";
    case FormulaId::phi_mul: return "phi_mul";
    case FormulaId::phi_addsub: return "phi_addsub";
    case FormulaId::I_CRIT_m: return "I_CRIT_m";
    case FormulaId::CRIT_div: return "CRIT_div";
    case FormulaId::P_TF_m: return "P_TF_m";
    case FormulaId::P_UL_m: return "P_UL_m";
    case FormulaId::PERM_cmp: return "PERM_cmp";
    case FormulaId::PERM_swap: return "PERM_swap";
  }
  return "?";
}

BigInt predict_sequences(long j) {
  require_at_least(j, 2, "predict_sequences");
  return pow2(j - 2);
}

BigInt predict_mults_element(long j) {
  require_at_least(j, 2, "predict_mults_element");
  if (j == 2) return 1;  // 2^-1 * 2
  return pow2(j - 3) * j;
}

BigInt predict_phi_mul(long beta) {
  const BigInt b = beta;
  return b * (b - 1) * (b - 2) / 6;
}

BigInt predict_phi_addsub(long beta) {
  const BigInt b = beta;
  return (b - 1) * (b - 2) * (b - 3) / 6;
}

BigInt predict_crit_total(long m) {
  require_at_least(m, 1, "predict_crit_total");
  const BigInt x = m;
  return (x * x * x - 3 * x * x + 8 * x - 3) / 3;
}

BigInt predict_crit_div(long m) {
  const BigInt x = m;
  return x * (x + 1) / 2;
}

BigInt predict_combrit_star(long m) {
  require_at_least(m, 1, "predict_combrit_star");
  if (m > 60) throw CountOverflow("predict_combrit_star");
  return BigInt(m) * (pow2(m) - 2) / 2;
}

BigInt predict_combrit(long m) {
  require_at_least(m, 1, "predict_combrit");
  if (m > 60) throw CountOverflow("predict_combrit");
  return BigInt(m) * (pow2(m) + m - 1) / 2;
}

BigInt predict_ptf(long m) {
  const BigInt x = m;
  return x * x * x;
}

BigInt predict_pul(long m) {
  const BigInt x = m;
  return (7 * x * x * x - 27 * x * x + 44 * x - 24) / 6;
}

BigInt predict_perm_cmp(long n) {
  const BigInt x = n;
  return x * (x - 1) / 2;
}

BigInt predict_perm_swap(long n) {
  const BigInt x = n;
  return x * (x - 1);
}

double crit_bound(long n) {
  const double x = static_cast<double>(n);
  return 1.023 * std::pow(x, std::log2(7.0)) + 679.18 * x * x;
}

bool within_crit_bound(const BigInt& measured, long n) {
  require_at_least(n, 1, "within_crit_bound");
  const auto un = static_cast<unsigned long>(n);
  if (std::has_single_bit(un)) {
    // n^(log2 7) = 7^(log2 n) exactly; scale both sides by 1000.
    BigInt seven_k = 1;
    for (int k = std::bit_width(un) - 1; k > 0; --k) seven_k *= 7;
    const BigInt nn = BigInt(n) * n;
    return measured * 1000 <= 1023 * seven_k + 679180 * nn;
  }
  return measured.convert_to<double>() <= crit_bound(n);
}

FlopAlgo parse_flop_algo(const std::string& name) {
  if (name == "crit") return FlopAlgo::Crit;
  if (name == "crit-star") return FlopAlgo::CritStar;
  if (name == "comb") return FlopAlgo::Comb;
  if (name == "combrit") return FlopAlgo::Combrit;
  if (name == "ptf") return FlopAlgo::Ptf;
  if (name == "pul") return FlopAlgo::Pul;
  if (name == "perm") return FlopAlgo::Perm;
  throw InvalidArgument("unknown flop algorithm '" + name + "'");
}

std::string to_string(FlopAlgo a) {
  switch (a) {
    case FlopAlgo::Crit: return "crit";
    case FlopAlgo::CritStar: return "crit-star";
    case FlopAlgo::Comb: return "comb";
    case FlopAlgo::Combrit: return "combrit";
    case FlopAlgo::Ptf: return "ptf";
    case FlopAlgo::Pul: return "pul";
    case FlopAlgo::Perm: return "perm";
  }
  return "?";
}

FlopLedger measure(FlopAlgo algo, long m) {
  require_at_least(m, 1, "measure");
  const auto n = static_cast<std::size_t>(m);
  FlopLedger L;
  switch (algo) {
    case FlopAlgo::Crit: invert_upper_crit(random_matrix(MatrixKind::Upper, n, kSeed), &L); break;
    case FlopAlgo::CritStar: invert_unit_upper_crit_star(random_matrix(MatrixKind::UnitUpper, n, kSeed), &L); break;
    case FlopAlgo::Comb: {
      if (n > HopscotchCard::kMaxBeta) throw CardTooLarge(n);
      const HopscotchCard card = build_card(std::max<std::size_t>(n, 2));
      invert_unit_upper_combinatorial(random_matrix(MatrixKind::UnitUpper, n, kSeed), card, &L);
      break;
    }
    case FlopAlgo::Combrit: {
      if (n > HopscotchCard::kMaxBeta) throw CardTooLarge(n);
      const HopscotchCard card = build_card(std::max<std::size_t>(n, 2));
      invert_upper_combrit(random_matrix(MatrixKind::Upper, n, kSeed), card, n, &L);
      break;
    }
    case FlopAlgo::Ptf:
      matmul_tri_full(random_matrix(MatrixKind::Upper, n, kSeed), random_matrix(MatrixKind::Dense, n, kSeed + 1), &L);
      break;
    case FlopAlgo::Pul:
      matmul_upper_lower(random_matrix(MatrixKind::Upper, n, kSeed),
                         strict_lower_part(random_matrix(MatrixKind::Dense, n, kSeed + 1)), &L);
      break;
    case FlopAlgo::Perm:
      greedy_column_pivot(random_matrix(MatrixKind::Dense, n, kSeed), 0.0, &L);
      break;
  }
  return L;
}

BigInt measured_mults_element(long j) {
  require_at_least(j, 2, "measured_mults_element");
  const auto n = static_cast<std::size_t>(j);
  const HopscotchCard card = build_card(n);
  FlopLedger L;
  combinatorial_element(random_matrix(MatrixKind::UnitUpper, n, kSeed), card, 0, n - 1, &L);
  return big(L.mul);
}

std::vector<ComparisonRow> compare_report(FlopAlgo algo, long m) {
  std::vector<ComparisonRow> rows;
  const FlopLedger L = measure(algo, m);
  switch (algo) {
    case FlopAlgo::Crit:
      rows.push_back(row(FormulaId::CRIT_div, algo, m, predict_crit_div(m), big(L.div), true));
      rows.push_back(row(FormulaId::I_CRIT_m, algo, m, predict_crit_total(m), big(L.total()), true));
      break;
    case FlopAlgo::CritStar:
      rows.push_back(row(FormulaId::phi_mul, algo, m, predict_phi_mul(m), big(L.mul), true));
      rows.push_back(row(FormulaId::phi_addsub, algo, m, predict_phi_addsub(m), big(L.addsub), true));
      break;
    case FlopAlgo::Comb:
      for (long j = 2; j <= m; ++j) {
        const BigInt count = static_cast<unsigned long>(hopscotch_series(1, j).size());
        rows.push_back(row(FormulaId::S_j, algo, j, predict_sequences(j), count, true));
        rows.push_back(row(FormulaId::M_j, algo, j, predict_mults_element(j), measured_mults_element(j), false));
      }
      rows.push_back(row(FormulaId::I_COMBRIT_star, algo, m, predict_combrit_star(m), big(L.mul + L.addsub), false));
      break;
    case FlopAlgo::Combrit:
      rows.push_back(row(FormulaId::I_COMBRIT, algo, m, predict_combrit(m), big(L.total()), false));
      break;
    case FlopAlgo::Ptf:
      rows.push_back(row(FormulaId::P_TF_m, algo, m, predict_ptf(m), big(L.mul + L.addsub), true));
      break;
    case FlopAlgo::Pul:
      rows.push_back(row(FormulaId::P_UL_m, algo, m, predict_pul(m), big(L.mul + L.addsub), true));
      break;
    case FlopAlgo::Perm:
      rows.push_back(row(FormulaId::PERM_cmp, algo, m, predict_perm_cmp(m), big(L.cmp), true));
      rows.push_back(row(FormulaId::PERM_swap, algo, m, predict_perm_swap(m), big(L.swap), true));
      break;
  }
  return rows;
}

std::vector<ComparisonRow> compare_report(FlopAlgo algo, const std::vector<long>& sizes) {
  std::vector<ComparisonRow> out;
  for (long m : sizes) {
    auto r = compare_report(algo, m);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace combinv
