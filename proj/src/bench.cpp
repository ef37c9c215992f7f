#include "combinv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include <json.hpp>

#include "combinv/error.hpp"
#include "combinv/factorize.hpp"
#include "combinv/hopscotch.hpp"
#include "combinv/matrix_io.hpp"
#include "combinv/random.hpp"
#include "combinv/splitinv.hpp"
#include "combinv/triinv.hpp"

namespace combinv {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kMethods = {"crit", "crit-star", "combrit", "lu", "skul",
                                           "qr",   "sqr",       "gj",      "rsi", "brsi"};

MatrixKind input_kind(const std::string& name) {
  if (name == "crit" || name == "combrit") return MatrixKind::Upper;
  if (name == "crit-star") return MatrixKind::UnitUpper;
  return MatrixKind::DiagDominant;
}

std::size_t brsi_base(const BenchMethod& m) { return m.base ? m.base : BrsiOptions{}.base; }

struct Context {
  const HopscotchCard* card;
  std::size_t cutoff;
  Deadline deadline;
};

std::vector<Matrix> execute(const BenchMethod& m, const Matrix& A, const Context& ctx, FlopLedger* ledger) {
  const std::string& name = m.name;
  if (name == "crit") return {invert_upper_crit(A, ledger).inverse};
  if (name == "crit-star") return {invert_unit_upper_crit_star(A, ledger).inverse};
  if (name == "combrit") return {invert_upper_combrit(A, *ctx.card, m.base, ledger, ctx.cutoff).inverse};
  if (name == "lu") {
    auto b = lu_crout(A, ledger);
    return {b.L, b.U};
  }
  if (name == "skul") {
    auto b = skul(A, ledger);
    return {b.L, b.U, b.S, b.K};
  }
  if (name == "qr") {
    auto b = qr_mgs(A, ledger);
    return {b.Q, b.R};
  }
  if (name == "sqr") {
    auto b = sqr(A, ledger);
    return {b.Q, b.R, b.S};
  }
  if (name == "gj") return {gauss_jordan_inverse(A, ledger)};
  if (name == "rsi") {
    RsiOptions o;
    o.cutoff = ctx.cutoff;
    o.deadline = ctx.deadline;
    return {rsi_invert(A, o, ledger).Ainv};
  }
  if (name == "brsi") {
    BrsiOptions o;
    o.gamma = m.gamma;
    o.card = ctx.card;
    o.base = brsi_base(m);
    o.cutoff = ctx.cutoff;
    o.deadline = ctx.deadline;
    return {brsi_invert(A, o, ledger).Ainv};
  }
  throw InvalidArgument("unknown bench method '" + name + "'");
}

double residual(const BenchMethod& m, const Matrix& A, const std::vector<Matrix>& out, std::size_t cutoff) {
  const std::size_t n = A.rows();
  const Matrix I = identity(n);
  auto mm = [&](const Matrix& X, const Matrix& Y) { return matmul(X, Y, cutoff); };
  const std::string& name = m.name;
  if (name == "crit" || name == "crit-star" || name == "combrit") return max_abs_residual(mm(A, out[0]), I);
  if (name == "lu") return max_abs_residual(mm(out[0], out[1]), A);
  if (name == "skul")
    return std::max(max_abs_residual(mm(out[0], out[1]), A), max_abs_residual(mm(mm(out[2], out[3]), A), I));
  if (name == "qr" || name == "sqr") {
    double r = std::max(max_abs_residual(mm(out[0], out[1]), A),
                        max_abs_residual(mm(out[0].transpose(), out[0]), I));
    if (name == "sqr") r = std::max(r, max_abs_residual(mm(mm(out[2], out[0].transpose()), A), I));
    return r;
  }
  return max_abs_residual(mm(out[0], A), I);
}

std::string fmt(double v) { return format_double(v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string BenchMethod::label() const {
  const std::string b = base ? ",base=" + std::to_string(base) : "";
  if (name == "combrit") return "combrit(beta=" + std::to_string(beta) + b + ")";
  if (name == "brsi") return "brsi(gamma=" + std::to_string(gamma) + ",beta=" + std::to_string(beta) + b + ")";
  return name;
}

BenchMethod parse_bench_method(const std::string& text) {
  BenchMethod m;
  const auto colon = text.find(':');
  m.name = text.substr(0, colon);
  if (std::find(kMethods.begin(), kMethods.end(), m.name) == kMethods.end())
    throw InvalidArgument("unknown bench method '" + m.name + "'");
  if (colon == std::string::npos) return m;
  std::stringstream ss(text.substr(colon + 1));
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("bad method parameter '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(kv.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad method parameter '" + kv + "'");
    }
    if (key == "beta") m.beta = value;
    else if (key == "gamma") m.gamma = value;
    else if (key == "base") m.base = value;
    else throw InvalidArgument("unknown method parameter '" + key + "'");
  }
  return m;
}

std::string to_string(BenchStatus s) {
  switch (s) {
    case BenchStatus::Ok: return "ok";
    case BenchStatus::Failed: return "failed";
    case BenchStatus::Timeout: return "timeout";
  }
  return "?";
}

void validate(const BenchSpec& spec) {
  if (spec.sizes.empty()) throw InvalidArgument("bench needs at least one size");
  if (std::any_of(spec.sizes.begin(), spec.sizes.end(), [](std::size_t n) { return n == 0; }))
    throw InvalidArgument("bench sizes must be positive");
  if (spec.methods.empty()) throw InvalidArgument("bench needs at least one method");
  if (spec.repeats < 1) throw InvalidArgument("bench repeats must be >= 1");
}

BenchRow run_bench_cell(const BenchSpec& spec, const BenchMethod& method, std::size_t n) {
  BenchRow row;
  row.n = n;
  row.method = method.label();
  const Matrix A = random_matrix(input_kind(method.name), n, spec.seed + n);
  std::optional<HopscotchCard> card;
  if (method.name == "combrit" || method.name == "brsi") card = build_card(method.beta);

  auto make_ctx = [&] {
    Context ctx{card ? &*card : nullptr, spec.cutoff, std::nullopt};
    if (spec.timeout_seconds > 0)
      ctx.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                        std::chrono::duration<double>(spec.timeout_seconds));
    return ctx;
  };

  try {
    std::vector<Matrix> out = execute(method, A, make_ctx(), nullptr);  // warm-up
    double total = 0.0;
    for (std::size_t r = 0; r < spec.repeats; ++r) {
      const Context ctx = make_ctx();
      const auto t0 = Clock::now();
      out = execute(method, A, ctx, nullptr);
      total += std::chrono::duration<double>(Clock::now() - t0).count();
      ++row.repeats;
    }
    row.mean_seconds = total / static_cast<double>(row.repeats);
    row.residual = residual(method, A, out, spec.cutoff);
    if (spec.ledger) {
      FlopLedger L;
      execute(method, A, Context{card ? &*card : nullptr, spec.cutoff, std::nullopt}, &L);
      row.ledger = L;
    }
  } catch (const Timeout& e) {
    row.status = BenchStatus::Timeout;
    row.reason = "exceeded " + fmt(spec.timeout_seconds) + " s";
    row.mean_seconds = spec.timeout_seconds;
  } catch (const Error& e) {
    row.status = BenchStatus::Failed;
    row.reason = e.what();
  }
  return row;
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  validate(spec);
  std::vector<BenchRow> rows;
  for (std::size_t n : spec.sizes)
    for (const auto& m : spec.methods) rows.push_back(run_bench_cell(spec, m, n));
  return rows;
}

std::vector<OverheadRow> overhead_ratios(const std::vector<BenchRow>& rows) {
  std::map<std::pair<std::size_t, std::string>, const BenchRow*> by;
  for (const auto& r : rows)
    if (r.status == BenchStatus::Ok) by[{r.n, r.method}] = &r;
  std::vector<OverheadRow> out;
  std::vector<std::size_t> sizes;
  for (const auto& r : rows)
    if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
  for (std::size_t n : sizes) {
    for (const auto& [aug, plain] : {std::pair<std::string, std::string>{"skul", "lu"}, {"sqr", "qr"}}) {
      auto a = by.find({n, aug});
      auto p = by.find({n, plain});
      if (a == by.end() || p == by.end() || p->second->mean_seconds <= 0) continue;
      out.push_back({n, aug + "/" + plain, a->second->mean_seconds / p->second->mean_seconds});
    }
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "n,method,status,repeats,mean_seconds,residual,mul,addsub,div,reason\n";
  for (const auto& r : rows) {
    os << r.n << ',' << csv_field(r.method) << ',' << to_string(r.status) << ',' << r.repeats << ',' << fmt(r.mean_seconds)
       << ',' << fmt(r.residual) << ',';
    if (r.ledger) os << r.ledger->mul << ',' << r.ledger->addsub << ',' << r.ledger->div;
    else os << ",,";
    os << ',' << csv_field(r.reason) << '\n';
  }
  return os.str();
}

std::string overhead_csv(const std::vector<OverheadRow>& rows) {
  std::ostringstream os;
  os << "n,ratio,value\n";
  for (const auto& r : rows) os << r.n << ',' << r.ratio << ',' << fmt(r.value) << '\n';
  return os.str();
}

std::string bench_json(const std::vector<BenchRow>& rows, const std::vector<OverheadRow>& overhead) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e = {{"n", r.n},
                        {"method", r.method},
                        {"status", to_string(r.status)},
                        {"repeats", r.repeats},
                        {"mean_seconds", r.mean_seconds},
                        {"residual", r.residual},
                        {"reason", r.reason}};
    if (r.ledger) e["ledger"] = {{"mul", r.ledger->mul}, {"addsub", r.ledger->addsub}, {"div", r.ledger->div}};
    j["rows"].push_back(e);
  }
  j["overhead"] = nlohmann::json::array();
  for (const auto& o : overhead) j["overhead"].push_back({{"n", o.n}, {"ratio", o.ratio}, {"value", o.value}});
  return j.dump(2) + "\n";
}

}  // namespace combinv
