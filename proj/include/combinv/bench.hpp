#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "combinv/flop_ledger.hpp"
#include "combinv/matmul.hpp"

namespace combinv {

// Method ids: crit, crit-star, combrit, lu, skul, qr, sqr, gj, rsi, brsi.
struct BenchMethod {
  std::string name;
  std::size_t beta = 2;    // combrit, brsi
  std::size_t gamma = 2;   // brsi
  std::size_t base = 0;    // combrit leaf (0: beta), brsi leaf (0: BrsiOptions default)

  std::string label() const;
};

// "combrit:beta=2", "brsi:gamma=2,beta=2,base=64", or a bare name.
BenchMethod parse_bench_method(const std::string& text);

struct BenchSpec {
  std::vector<std::size_t> sizes;
  std::vector<BenchMethod> methods;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  std::size_t cutoff = kDefaultStrassenCutoff;
  double timeout_seconds = 0.0;  // per cell, 0 disables; honoured by rsi and brsi
  bool ledger = false;           // add one traced run per cell
};

enum class BenchStatus { Ok, Failed, Timeout };
std::string to_string(BenchStatus s);

struct BenchRow {
  std::size_t n = 0;
  std::string method;
  BenchStatus status = BenchStatus::Ok;
  std::string reason;
  std::size_t repeats = 0;
  // Mean over timed repeats. For a timeout this is the budget, a lower bound.
  double mean_seconds = 0.0;
  double residual = 0.0;
  std::optional<FlopLedger> ledger;
};

struct OverheadRow {
  std::size_t n = 0;
  std::string ratio;  // "skul/lu" or "sqr/qr"
  double value = 0.0;
};

void validate(const BenchSpec& spec);
std::vector<BenchRow> run_bench(const BenchSpec& spec);
BenchRow run_bench_cell(const BenchSpec& spec, const BenchMethod& method, std::size_t n);
std::vector<OverheadRow> overhead_ratios(const std::vector<BenchRow>& rows);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string overhead_csv(const std::vector<OverheadRow>& rows);
std::string bench_json(const std::vector<BenchRow>& rows, const std::vector<OverheadRow>& overhead);

}  // namespace combinv
