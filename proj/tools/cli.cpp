#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "combinv/bench.hpp"
#include "combinv/error.hpp"
#include "combinv/factorize.hpp"
#include "combinv/flops.hpp"
#include "combinv/hopscotch.hpp"
#include "combinv/matmul.hpp"
#include "combinv/matrix_io.hpp"
#include "combinv/random.hpp"
#include "combinv/splitinv.hpp"
#include "combinv/triinv.hpp"

namespace combinv::cli {

namespace {

using json = nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  bool ledger = false;
  std::size_t cutoff = kDefaultStrassenCutoff;
  std::string format = "csv";
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

void emit_matrix(const std::string& path, const Matrix& A, std::ostream& out) {
  std::ostringstream os;
  write_matrix(os, A);
  write_text(path, os.str(), out);
}

std::size_t parse_count(const std::string& s) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad size '" + s + "'");
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw InvalidArgument("bad size '" + s + "'");
  return v;
}

json ledger_json(const FlopLedger& L) {
  return {{"mul", L.mul}, {"addsub", L.addsub}, {"div", L.div}, {"cmp", L.cmp}, {"swap", L.swap}};
}

// One-record summary on err, CSV header + row or a JSON object.
void summary(std::ostream& err, const Globals& g, const std::vector<std::pair<std::string, std::string>>& fields,
             const std::optional<FlopLedger>& L) {
  if (g.format == "json") {
    json j;
    for (const auto& [k, v] : fields) j[k] = v;
    if (L) j["ledger"] = ledger_json(*L);
    err << j.dump() << '\n';
    return;
  }
  std::string head, row;
  for (const auto& [k, v] : fields) {
    head += (head.empty() ? "" : ",") + k;
    row += (row.empty() ? "" : ",") + v;
  }
  if (L) {
    head += ",mul,addsub,div";
    row += "," + std::to_string(L->mul) + "," + std::to_string(L->addsub) + "," + std::to_string(L->div);
  }
  err << head << '\n' << row << '\n';
}

HopscotchCard card_for(const std::string& path, std::size_t beta) {
  if (!path.empty()) return load_card(path);
  return build_card(beta);
}

// gen -----------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::size_t n = 0;
  std::string out;
};

void cmd_gen(const GenArgs& a, const Globals& g, std::ostream& out) {
  if (a.kind == "card") {
    std::ostringstream os;
    write_card(os, build_card(a.n));
    write_text(a.out, os.str(), out);
    return;
  }
  emit_matrix(a.out, random_matrix(parse_matrix_kind(a.kind), a.n, g.seed), out);
}

// invert --------------------------------------------------------------------

struct InvertArgs {
  std::string method = "crit";
  std::size_t beta = 2;
  std::size_t gamma = 2;
  std::size_t base = 0;
  std::string card;
  std::string in;
  std::string out;
  std::string emit_factors;
  double timeout = 0.0;
};

void cmd_invert(const InvertArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const Matrix A = load_matrix(a.in);
  if (!A.square()) throw ShapeMismatch("invert needs a square matrix");
  const std::size_t n = A.rows();
  std::optional<FlopLedger> L;
  if (g.ledger) L.emplace();
  FlopLedger* lp = L ? &*L : nullptr;
  Deadline deadline;
  if (a.timeout > 0)
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(a.timeout));

  Matrix X;
  const std::string& m = a.method;
  if (m == "crit") {
    X = invert_upper_crit(A, lp).inverse;
  } else if (m == "crit-star") {
    X = invert_unit_upper_crit_star(A, lp).inverse;
  } else if (m == "comb") {
    const HopscotchCard card = card_for(a.card, std::max<std::size_t>(n, 2));
    X = invert_upper_combinatorial(A, card, lp).inverse;
  } else if (m == "combrit") {
    const HopscotchCard card = card_for(a.card, a.beta);
    X = invert_upper_combrit(A, card, a.base, lp, g.cutoff).inverse;
  } else if (m == "gj") {
    X = gauss_jordan_inverse(A, lp);
  } else if (m == "rsi" || m == "brsi") {
    RsiBundle b;
    const bool keep = !a.emit_factors.empty();
    if (m == "rsi") {
      RsiOptions o;
      o.cutoff = g.cutoff;
      o.keep_factors = keep;
      o.deadline = deadline;
      b = rsi_invert(A, o, lp);
    } else {
      const HopscotchCard card = card_for(a.card, a.beta);
      BrsiOptions o;
      o.gamma = a.gamma;
      o.card = &card;
      if (a.base) o.base = a.base;
      o.cutoff = g.cutoff;
      o.keep_factors = keep;
      o.deadline = deadline;
      b = brsi_invert(A, o, lp);
    }
    if (keep) {
      for (std::size_t i = 0; i < b.factors.size(); ++i)
        save_matrix(a.emit_factors + ".M" + std::to_string(i) + ".mat", b.factors[i]);
      save_matrix(a.emit_factors + ".tail.mat", b.tail);
      save_matrix(a.emit_factors + ".P.mat", b.P.to_matrix());
    }
    X = std::move(b.Ainv);
  } else {
    throw InvalidArgument("unknown invert method '" + m + "'");
  }
  emit_matrix(a.out, X, out);
  const double res = max_abs_residual(matmul(A, X, g.cutoff), identity(n));
  summary(err, g, {{"method", m}, {"n", std::to_string(n)}, {"residual", format_double(res)}}, L);
}

// factorize -----------------------------------------------------------------

struct FactorArgs {
  std::string method = "sqr";
  std::string in;
  std::string out_prefix;
};

void cmd_factorize(const FactorArgs& a, const Globals& g, std::ostream& err) {
  const Matrix A = load_matrix(a.in);
  if (!A.square()) throw ShapeMismatch("factorize needs a square matrix");
  const std::size_t n = A.rows();
  std::optional<FlopLedger> L;
  if (g.ledger) L.emplace();
  FlopLedger* lp = L ? &*L : nullptr;
  auto mm = [&](const Matrix& X, const Matrix& Y) { return matmul(X, Y, g.cutoff); };
  const std::string& p = a.out_prefix;
  double res = 0.0;
  if (a.method == "sqr" || a.method == "qr") {
    const SqrBundle b = a.method == "sqr" ? sqr(A, lp) : qr_mgs(A, lp);
    res = max_abs_residual(mm(b.Q, b.R), A);
    if (!p.empty()) {
      save_matrix(p + ".Q.mat", b.Q);
      save_matrix(p + ".R.mat", b.R);
    }
    if (a.method == "sqr") {
      res = std::max(res, max_abs_residual(mm(b.R, b.S), identity(n)));
      if (!p.empty()) save_matrix(p + ".S.mat", b.S);
    }
  } else if (a.method == "skul" || a.method == "lu") {
    const SkulBundle b = a.method == "skul" ? skul(A, lp) : lu_crout(A, lp);
    res = max_abs_residual(mm(b.L, b.U), A);
    if (!p.empty()) {
      save_matrix(p + ".L.mat", b.L);
      save_matrix(p + ".U.mat", b.U);
    }
    if (a.method == "skul") {
      res = std::max(res, max_abs_residual(mm(b.U, b.S), identity(n)));
      res = std::max(res, max_abs_residual(mm(b.L, b.K), identity(n)));
      if (!p.empty()) {
        save_matrix(p + ".S.mat", b.S);
        save_matrix(p + ".K.mat", b.K);
      }
    }
  } else {
    throw InvalidArgument("unknown factorize method '" + a.method + "'");
  }
  summary(err, g, {{"method", a.method}, {"n", std::to_string(n)}, {"residual", format_double(res)}}, L);
}

// flops ---------------------------------------------------------------------

struct FlopsArgs {
  std::string algo = "crit";
  std::string sizes = "2..16";
  std::string out;
};

void cmd_flops(const FlopsArgs& a, const Globals& g, std::ostream& out) {
  const FlopAlgo algo = parse_flop_algo(a.algo);
  std::vector<long> sizes;
  for (std::size_t s : parse_sizes(a.sizes, false)) sizes.push_back(static_cast<long>(s));
  const auto rows = compare_report(algo, sizes);
  std::ostringstream os;
  if (g.format == "json") {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"formula_id", to_string(r.formula_id)},
                   {"algo", r.algo},
                   {"size", r.size},
                   {"predicted", r.predicted.str()},
                   {"measured", r.measured.str()},
                   {"delta", r.delta.str()},
                   {"asserted", r.asserted},
                   {"match", r.match()}});
    os << j.dump(2) << '\n';
  } else {
    os << "formula_id,algo,size,predicted,measured,delta,asserted,match\n";
    for (const auto& r : rows)
      os << to_string(r.formula_id) << ',' << r.algo << ',' << r.size << ',' << r.predicted << ',' << r.measured
         << ',' << r.delta << ',' << (r.asserted ? "yes" : "no") << ',' << (r.match() ? "yes" : "no") << '\n';
  }
  write_text(a.out, os.str(), out);
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string sizes = "16..256";
  std::vector<std::string> methods;
  std::size_t repeats = 10;
  double timeout = 0.0;
  std::string out;
};

void cmd_bench(const BenchArgs& a, const Globals& g, std::ostream& out) {
  BenchSpec spec;
  spec.sizes = parse_sizes(a.sizes, true);
  for (const auto& m : a.methods) spec.methods.push_back(parse_bench_method(m));
  spec.repeats = a.repeats;
  spec.seed = g.seed;
  spec.cutoff = g.cutoff;
  spec.timeout_seconds = a.timeout;
  spec.ledger = g.ledger;
  validate(spec);
  const auto rows = run_bench(spec);
  const auto over = overhead_ratios(rows);
  if (g.format == "json") write_text(a.out, bench_json(rows, over), out);
  else write_text(a.out, bench_csv(rows) + (over.empty() ? "" : "\n" + overhead_csv(over)), out);
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string in;
  std::string inverse;
  std::string card;
  double tol = 1e-8;
};

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& err) {
  int code = kOk;
  if (!a.card.empty()) {
    const HopscotchCard card = load_card(a.card);
    summary(err, g,
            {{"card", a.card}, {"beta", std::to_string(card.beta())},
             {"sequences", std::to_string(card.total_sequences())}},
            std::nullopt);
  }
  if (!a.in.empty() || !a.inverse.empty()) {
    if (a.in.empty() || a.inverse.empty()) throw InvalidArgument("verify needs both --in and --inverse");
    const Matrix A = load_matrix(a.in);
    const Matrix X = load_matrix(a.inverse);
    if (!A.square() || X.rows() != A.rows() || X.cols() != A.cols()) throw ShapeMismatch("verify needs square matrices of one order");
    const Matrix I = identity(A.rows());
    const double res = std::max(max_abs_residual(matmul(A, X, g.cutoff), I), max_abs_residual(matmul(X, A, g.cutoff), I));
    const bool ok = res <= a.tol;
    summary(err, g,
            {{"n", std::to_string(A.rows())}, {"residual", format_double(res)}, {"tol", format_double(a.tol)},
             {"status", ok ? "ok" : "failed"}},
            std::nullopt);
    if (!ok) code = kNumerical;
  }
  if (a.card.empty() && a.in.empty() && a.inverse.empty()) throw InvalidArgument("verify needs --card or --in/--inverse");
  return code;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Numerical: return kNumerical;
    case ErrorKind::Format: return kFormat;
    case ErrorKind::Timeout: return kNumerical;
    case ErrorKind::Argument: return kUsage;
  }
  return kUsage;
}

}  // namespace

std::vector<std::size_t> parse_sizes(const std::string& text, bool doubling) {
  std::vector<std::size_t> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::size_t lo = parse_count(text.substr(0, dots));
    const std::size_t hi = parse_count(text.substr(dots + 2));
    if (lo == 0 || hi < lo) throw InvalidArgument("bad size range '" + text + "'");
    for (std::size_t v = lo; v <= hi; v = doubling ? 2 * v : v + 1) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_count(item));
  if (out.empty()) throw InvalidArgument("empty size list");
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial and recursive matrix inversion toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_flag("--ledger", g.ledger, "Count operations and report them");
  app.add_option("--strassen-cutoff", g.cutoff, "Naive multiply at or below this order")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  GenArgs gen;
  auto* sgen = app.add_subcommand("gen", "Generate a random matrix or a Hopscotch card");
  sgen->add_option("kind", gen.kind,
                   "unit-upper, upper, unit-lower, lower, spd, dense, diag-dominant, int-upper, or card")
      ->required();
  sgen->add_option("n", gen.n, "Matrix order, or beta for a card")->required()->check(CLI::PositiveNumber);
  sgen->add_option("--out,-o", gen.out, "Output file (default stdout)");

  InvertArgs inv;
  auto* sinv = app.add_subcommand("invert", "Invert a matrix");
  sinv->add_option("--method,-m", inv.method, "crit, crit-star, comb, combrit, rsi, brsi, gj")
      ->check(CLI::IsMember({"crit", "crit-star", "comb", "combrit", "rsi", "brsi", "gj"}))
      ->capture_default_str();
  sinv->add_option("--beta", inv.beta, "Card size for combrit and brsi")->capture_default_str();
  sinv->add_option("--gamma", inv.gamma, "Block count for brsi")->capture_default_str();
  sinv->add_option("--base", inv.base, "Leaf size for combrit and brsi (0: default)");
  sinv->add_option("--card", inv.card, "Load the card from a file instead of building it");
  sinv->add_option("--in,-i", inv.in, "Input matrix")->required();
  sinv->add_option("--out,-o", inv.out, "Output inverse (default stdout)");
  sinv->add_option("--emit-factors", inv.emit_factors, "rsi/brsi: write PREFIX.M<l>.mat, PREFIX.tail.mat, PREFIX.P.mat");
  sinv->add_option("--timeout", inv.timeout, "rsi/brsi: give up after this many seconds");

  FactorArgs fac;
  auto* sfac = app.add_subcommand("factorize", "Factorize with the inverse factors alongside");
  sfac->add_option("--method,-m", fac.method, "sqr, skul, qr, lu")
      ->check(CLI::IsMember({"sqr", "skul", "qr", "lu"}))
      ->capture_default_str();
  sfac->add_option("--in,-i", fac.in, "Input matrix")->required();
  sfac->add_option("--out-prefix", fac.out_prefix, "Write PREFIX.Q/.R/.S or PREFIX.L/.U/.S/.K");

  FlopsArgs fl;
  auto* sfl = app.add_subcommand("flops", "Compare counted operations with closed forms");
  sfl->add_option("--algo,-a", fl.algo, "crit, crit-star, comb, combrit, ptf, pul, perm")->capture_default_str();
  sfl->add_option("--sizes", fl.sizes, "a..b or a,b,c")->capture_default_str();
  sfl->add_option("--out,-o", fl.out, "Output file (default stdout)");

  BenchArgs be;
  auto* sbe = app.add_subcommand("bench", "Time methods over a range of sizes");
  sbe->add_option("--sizes", be.sizes, "a..b (doubling) or a,b,c")->capture_default_str();
  sbe->add_option("--methods", be.methods, "Method ids, e.g. lu skul combrit:beta=2 brsi:gamma=2,beta=2")
      ->required();
  sbe->add_option("--repeats", be.repeats, "Timed runs per cell")->capture_default_str();
  sbe->add_option("--timeout", be.timeout, "Per-cell budget in seconds for rsi and brsi (0: none)");
  sbe->add_option("--out,-o", be.out, "Output file (default stdout)");

  VerifyArgs ve;
  auto* sve = app.add_subcommand("verify", "Check an inverse or a card file");
  sve->add_option("--in,-i", ve.in, "Matrix");
  sve->add_option("--inverse", ve.inverse, "Claimed inverse");
  sve->add_option("--card", ve.card, "Card file to validate");
  sve->add_option("--tol", ve.tol, "Largest accepted max-abs residual")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*sgen) cmd_gen(gen, g, out);
    else if (*sinv) cmd_invert(inv, g, out, err);
    else if (*sfac) cmd_factorize(fac, g, err);
    else if (*sfl) cmd_flops(fl, g, out);
    else if (*sbe) cmd_bench(be, g, out);
    else if (*sve) return cmd_verify(ve, g, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return kOk;
}

}  // namespace combinv::cli
