// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "combinv/bench.hpp"
#include "combinv/error.hpp"
#include "combinv/factorize.hpp"
#include "combinv/flops.hpp"
#include "combinv/hopscotch.hpp"
#include "combinv/matmul.hpp"
#include "combinv/random.hpp"
#include "combinv/splitinv.hpp"
#include "combinv/triinv.hpp"
#include "support.hpp"

using namespace combinv;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string timing(double s) { return num(s * 1e3) + " ms"; }

// 1 ------------------------------------------------------------------------

Outcome golden_4x4() {
  const Matrix T = oracle::load_fixture("golden_4x4_T.mat");
  const Matrix S = oracle::load_fixture("golden_4x4_S.mat");
  const auto card4 = build_card(4), card2 = build_card(2);
  invert_unit_upper_crit_star(T);  // warm-up
  const auto t0 = Clock::now();
  const bool comb = invert_unit_upper_combinatorial(T, card4).inverse == S;
  const bool star = invert_unit_upper_crit_star(T).inverse == S;
  const bool combrit = invert_upper_combrit(T, card2, 2).inverse == S;
  const double t = seconds_since(t0);
  std::string d = std::string("combinatorial ") + (comb ? "exact" : "differs") + ", crit-star " +
                  (star ? "exact" : "differs") + ", combrit " + (combrit ? "exact" : "differs") + ", " + timing(t);
  return {comb && star && combrit && t < 1e-3, d};
}

// 2 ------------------------------------------------------------------------

Outcome golden_5x5() {
  const Matrix A = oracle::load_fixture("golden_5x5_A.mat");
  sqr(A);
  const auto t0 = Clock::now();
  const auto q = sqr(A);
  const auto l = skul(A);
  const double t = seconds_since(t0);
  const std::vector<std::pair<std::string, double>> dev{
      {"Q", oracle::max_abs_diff(q.Q, oracle::load_fixture("golden_5x5_Q.mat"))},
      {"R", oracle::max_abs_diff(q.R, oracle::load_fixture("golden_5x5_R.mat"))},
      {"S(sqr)", oracle::max_abs_diff(q.S, oracle::load_fixture("golden_5x5_SQR_S.mat"))},
      {"L", oracle::max_abs_diff(l.L, oracle::load_fixture("golden_5x5_L.mat"))},
      {"U", oracle::max_abs_diff(l.U, oracle::load_fixture("golden_5x5_U.mat"))},
      {"S(skul)", oracle::max_abs_diff(l.S, oracle::load_fixture("golden_5x5_SKUL_S.mat"))},
      {"K", oracle::max_abs_diff(l.K, oracle::load_fixture("golden_5x5_K.mat"))},
  };
  bool ok = t < 1e-3;
  std::string d = "max deviation";
  for (const auto& [name, v] : dev) {
    ok = ok && v <= 5e-5;
    d += " " + name + " " + num(v);
  }
  return {ok, d + " (tol 5e-05), " + timing(t)};
}

// 3 ------------------------------------------------------------------------

Outcome hopscotch_counts() {
  const auto t0 = Clock::now();
  bool ok = true;
  for (long j = 2; j <= 14; ++j) {
    const auto s = hopscotch_series(1, j);
    std::set<std::vector<long>> set;
    for (const auto& q : s) set.insert(q.indices);
    ok = ok && s.size() == (std::size_t{1} << (j - 2)) && set == oracle::brute_force_sequences(1, j);
  }
  const double t = seconds_since(t0);
  return {ok && t < 1.0, std::string(ok ? "all" : "not all") + " j in 2..14 match, " + timing(t)};
}

// 4 ------------------------------------------------------------------------

Outcome translation_law() {
  std::size_t checked = 0, bad = 0;
  for (long a = 1; a <= 10; ++a)
    for (long b = a + 1; b <= 10; ++b)
      for (long xi = 0; xi <= 10; ++xi) {
        ++checked;
        if (translate_series(hopscotch_series(a, b), xi) != hopscotch_series(a + xi, b + xi)) ++bad;
      }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " triples equal"};
}

// 5 ------------------------------------------------------------------------

Outcome flop_exact() {
  struct Part {
    std::string name;
    std::vector<long> failing;
  };
  std::vector<Part> parts{{"crit-star mul", {}}, {"crit-star addsub", {}}, {"crit div", {}},
                          {"crit total", {}},    {"ptf total", {}},        {"pul total", {}}};
  const auto t0 = Clock::now();
  for (long m = 2; m <= 16; ++m) {
    const FlopLedger star = measure(FlopAlgo::CritStar, m);
    const FlopLedger crit = measure(FlopAlgo::Crit, m);
    const FlopLedger ptf = measure(FlopAlgo::Ptf, m);
    const FlopLedger pul = measure(FlopAlgo::Pul, m);
    const BigInt M = m;
    const bool eq[] = {
        BigInt(star.mul) == M * (M - 1) * (M - 2) / 6,
        BigInt(star.addsub) == (M - 1) * (M - 2) * (M - 3) / 6,
        BigInt(crit.div) == M * (M + 1) / 2,
        BigInt(crit.total()) == (M * M * M - 3 * M * M + 8 * M - 3) / 3,
        BigInt(ptf.mul + ptf.addsub) == M * M * M,
        BigInt(pul.mul + pul.addsub) == (7 * M * M * M - 27 * M * M + 44 * M - 24) / 6,
    };
    for (std::size_t k = 0; k < parts.size(); ++k)
      if (!eq[k]) parts[k].failing.push_back(m);
  }
  const double t = seconds_since(t0);
  bool ok = t < 1.0;
  std::string d;
  for (const auto& p : parts) {
    ok = ok && p.failing.empty();
    d += (d.empty() ? "" : "; ") + p.name + " ";
    if (p.failing.empty()) {
      d += "ok";
    } else {
      d += "differs at m=";
      for (std::size_t k = 0; k < p.failing.size(); ++k) d += (k ? "," : "") + std::to_string(p.failing[k]);
    }
  }
  return {ok, d + "; " + timing(t)};
}

// 6 ------------------------------------------------------------------------

bool integral(const Matrix& A) {
  for (double v : A.values())
    if (v != std::floor(v)) return false;
  return true;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  const auto t0 = Clock::now();
  const auto card12 = build_card(12), card2 = build_card(2);
  std::size_t bad = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = size(rng);
    const Matrix T = oracle::random_int_unit_upper(n, 3, rng);
    const Matrix expected = oracle::from_int(oracle::unit_upper_inverse(oracle::to_int(T)));
    const Matrix a = invert_unit_upper_combinatorial(T, card12).inverse;
    const Matrix b = invert_unit_upper_crit_star(T).inverse;
    const Matrix c = invert_upper_combrit(T, card2, 2).inverse;
    if (!(a == expected && b == expected && c == expected && integral(a) && integral(b) && integral(c))) ++bad;
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 10.0, std::to_string(200 - bad) + "/200 agree exactly, " + timing(t)};
}

// 7 ------------------------------------------------------------------------

Outcome residual_suite() {
  const auto t0 = Clock::now();
  const auto card2 = build_card(2);
  double worst_ratio = 0.0;
  std::string worst;
  bool ok = true;
  auto record = [&](const std::string& what, std::size_t n, const Matrix& R, const Matrix& S) {
    const double r = max_abs_residual(oracle::product(R, S), identity(n));
    const double ratio = r / (1e-10 * static_cast<double>(n));
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = what + " n=" + std::to_string(n) + " residual " + num(r);
    }
    if (!(r <= 1e-10 * static_cast<double>(n))) ok = false;
  };
  for (std::size_t n : {8, 16, 64, 256, 512}) {
    const Matrix R = random_matrix(MatrixKind::Upper, n, 700 + n);
    const Matrix L = random_matrix(MatrixKind::Lower, n, 900 + n);
    for (auto m : {TriMethod::Crit, TriMethod::Combrit}) {
      TriInvOptions o;
      o.method = m;
      o.card = &card2;
      record(to_string(m) + " upper", n, R, invert_upper(R, o).inverse);
      record(to_string(m) + " lower", n, L, invert_lower(L, o).inverse);
    }
    const Matrix Tu = split_diag_unit(R).Tunit;
    const Matrix Tl = split_diag_unit(L.transpose()).Tunit.transpose();
    TriInvOptions star;
    star.method = TriMethod::CritStar;
    record("crit-star upper", n, Tu, invert_upper(Tu, star).inverse);
    record("crit-star lower", n, Tl, invert_lower(Tl, star).inverse);
    if (n <= 16) {
      const auto card = build_card(n);
      TriInvOptions c;
      c.method = TriMethod::Combinatorial;
      c.card = &card;
      record("combinatorial upper", n, R, invert_upper(R, c).inverse);
      record("combinatorial lower", n, L, invert_lower(L, c).inverse);
    }
  }
  const double t = seconds_since(t0);
  return {ok && t < 30.0, "worst " + worst + " (" + num(worst_ratio) + " of tol), combinatorial at n<=16, " +
                              num(t) + " s"};
}

// 8 ------------------------------------------------------------------------

Outcome strassen_equivalence() {
  std::vector<std::size_t> sizes;
  for (std::size_t n = 1; n <= 40; ++n) sizes.push_back(n);
  for (std::size_t n : {64, 96, 128, 256}) sizes.push_back(n);
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t recursed = 0;
  for (std::size_t n : sizes) {
    const Matrix A = random_matrix(MatrixKind::Dense, n, 3 * n), B = random_matrix(MatrixKind::Dense, n, 3 * n + 1);
    const Matrix N = matmul_naive(A, B);
    for (std::size_t cutoff : {kDefaultStrassenCutoff, std::size_t{16}}) {
      const auto plan = make_strassen_plan(n, cutoff);
      if (plan.depth() > 0) ++recursed;
      worst = std::max(worst, oracle::rel_frobenius(matmul_strassen(A, B, plan), N));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-11 && t < 30.0, "worst relative Frobenius " + num(worst) + " over " + std::to_string(sizes.size()) +
                                          " sizes (cutoffs 64 and 16, " + std::to_string(recursed) +
                                          " recursive runs), " + num(t) + " s"};
}

// 9 ------------------------------------------------------------------------

Outcome rsi_brsi() {
  const auto t0 = Clock::now();
  const auto card2 = build_card(2);
  double inv_err = 0.0, fac_ratio = 0.0, schur = 0.0;
  for (std::size_t n : {8, 16, 32, 64}) {
    const Matrix A = random_matrix(MatrixKind::DiagDominant, n, 100 + n);
    const Matrix X = oracle::inverse(A);
    const double scale = 1e-8 * static_cast<double>(n) * oracle::max_abs(A);

    RsiOptions ro;
    ro.keep_factors = true;
    const auto r = rsi_invert(A, ro);
    BrsiOptions bo;
    bo.card = &card2;
    bo.gamma = 2;
    bo.keep_factors = true;
    const auto b = brsi_invert(A, bo);

    for (const auto* res : {&r, &b}) {
      inv_err = std::max(inv_err, oracle::max_abs_diff(res->Ainv, X));
      Matrix chain = identity(res->padded_n);
      for (const auto& M : res->factors) chain = oracle::product(chain, M);
      chain = oracle::product(chain, res->tail);
      const Matrix AP = apply_columns(pad_identity(A, res->padded_n), res->P);
      fac_ratio = std::max(fac_ratio, max_abs_residual(chain, AP) / scale);
    }
    schur = std::max(schur, oracle::rel_frobenius(b.Ainv, schur_block_inverse_2x2(A, n / 2)));
  }
  const double t = seconds_since(t0);
  const bool ok = inv_err <= 1e-8 && fac_ratio <= 1.0 && schur <= 1e-9 && t < 60.0;
  return {ok, "inverse vs oracle " + num(inv_err) + ", factor identity " + num(fac_ratio) + " of tol, brsi vs schur " +
                  num(schur) + ", " + num(t) + " s"};
}

// 10, 11 -------------------------------------------------------------------

std::map<std::pair<std::size_t, std::string>, BenchRow> bench_cells(const std::vector<std::size_t>& sizes,
                                                                    const std::vector<std::string>& methods,
                                                                    double timeout) {
  BenchSpec spec;
  spec.sizes = sizes;
  spec.repeats = 5;
  spec.seed = 1;
  spec.timeout_seconds = timeout;
  for (const auto& m : methods) spec.methods.push_back(parse_bench_method(m));
  std::map<std::pair<std::size_t, std::string>, BenchRow> cells;
  for (std::size_t n : sizes)
    for (std::size_t k = 0; k < methods.size(); ++k) cells[{n, methods[k]}] = run_bench_cell(spec, spec.methods[k], n);
  return cells;
}

std::string cell(const BenchRow& r) {
  std::string s = num(r.mean_seconds) + "s";
  if (r.status == BenchStatus::Timeout) s = ">" + s;
  if (r.status == BenchStatus::Failed) s = "failed";
  return s;
}

bool ok_or_timeout(const BenchRow& r) { return r.status != BenchStatus::Failed; }

Outcome performance() {
  const std::vector<std::string> methods{"crit", "combrit:beta=2", "rsi", "brsi:gamma=2,beta=2", "gj"};
  const auto cells = bench_cells({512, 1024}, methods, 30.0);
  bool ok = true;
  std::string d;
  for (std::size_t n : {512, 1024}) {
    const auto& crit = cells.at({n, "crit"});
    const auto& combrit = cells.at({n, "combrit:beta=2"});
    const auto& rsi = cells.at({n, "rsi"});
    const auto& brsi = cells.at({n, "brsi:gamma=2,beta=2"});
    const auto& gj = cells.at({n, "gj"});
    const bool valid = crit.status == BenchStatus::Ok && combrit.status == BenchStatus::Ok &&
                       brsi.status == BenchStatus::Ok && gj.status == BenchStatus::Ok && ok_or_timeout(rsi);
    ok = ok && valid && combrit.mean_seconds < crit.mean_seconds && brsi.mean_seconds < rsi.mean_seconds &&
         brsi.mean_seconds < gj.mean_seconds;
    d += (d.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " combrit " + cell(combrit) + " crit " +
         cell(crit) + " brsi " + cell(brsi) + " rsi " + cell(rsi) + " gj " + cell(gj);
  }
  return {ok, d};
}

Outcome overhead() {
  const auto cells = bench_cells({128, 256, 512}, {"lu", "skul", "qr", "sqr"}, 0.0);
  bool ok = true;
  std::string d;
  for (std::size_t n : {128, 256, 512}) {
    const double a = cells.at({n, "skul"}).mean_seconds / cells.at({n, "lu"}).mean_seconds;
    const double b = cells.at({n, "sqr"}).mean_seconds / cells.at({n, "qr"}).mean_seconds;
    ok = ok && a > 1.0 && a < 6.0 && b > 1.0 && b < 6.0;
    d += (d.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " skul/lu " + num(a) + " sqr/qr " + num(b);
  }
  return {ok, d};
}

// 12 -----------------------------------------------------------------------

Outcome bound_check() {
  bool ok = true;
  std::string d;
  for (long n : {32, 64, 128}) {
    const FlopLedger L = measure(FlopAlgo::Crit, n);
    ok = ok && within_crit_bound(BigInt(L.total()), n);
    d += (d.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " measured " + std::to_string(L.total()) +
         " bound " + num(crit_bound(n));
  }
  return {ok, d};
}

std::string report_only() {
  std::ostringstream os;
  os << "element multiplications (j: formula/measured)";
  for (long j : {3, 5, 8, 12}) os << " " << j << ": " << predict_mults_element(j) << "/" << measured_mults_element(j);
  os << "; combrit totals (m: formula/measured)";
  for (long m : {4, 8}) {
    const auto rows = compare_report(FlopAlgo::Combrit, m);
    os << " " << m << ": " << rows[0].predicted << "/" << rows[0].measured;
  }
  return os.str();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden 4x4 triangular inverse", golden_4x4},
      {"golden 5x5 factorization fixtures", golden_5x5},
      {"hopscotch counts", hopscotch_counts},
      {"translation law", translation_law},
      {"flop exact-match suite", flop_exact},
      {"oracle equivalence on integer matrices", oracle_equivalence},
      {"triangular residual suite", residual_suite},
      {"strassen equivalence", strassen_equivalence},
      {"rsi and brsi correctness", rsi_brsi},
      {"performance ordering", performance},
      {"factorization overhead ratios", overhead},
      {"crit bound check", bound_check},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("info    report only: %s\n", report_only().c_str());
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
