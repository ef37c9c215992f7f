#include "combinv/hopscotch.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "combinv/error.hpp"

namespace combinv {

namespace {

constexpr long kMaxMaterializedInterior = 30;

// Lexicographic combinations of size k from [lo, lo + m).
void append_combinations(long a, long b, long k, HopscotchSeries& out) {
  const long lo = a + 1;
  const long m = b - a - 1;
  std::vector<long> c(k);
  for (long t = 0; t < k; ++t) c[t] = lo + t;
  while (true) {
    HopscotchSequence s;
    s.indices.reserve(k + 2);
    s.indices.push_back(a);
    s.indices.insert(s.indices.end(), c.begin(), c.end());
    s.indices.push_back(b);
    out.push_back(std::move(s));
    long t = k - 1;
    while (t >= 0 && c[t] == lo + m - k + t) --t;
    if (t < 0) break;
    ++c[t];
    for (long u = t + 1; u < k; ++u) c[u] = c[u - 1] + 1;
  }
}

[[noreturn]] void format_error(const std::string& what, std::size_t line) {
  throw CardFormatError(what + " (line " + std::to_string(line) + ")");
}

}  // namespace

HopscotchSeries hopscotch_series(long a, long b) {
  if (a <= 0 || b < a) throw InvalidEndpoints(a, b);
  HopscotchSeries out;
  if (a == b) return out;
  const long m = b - a - 1;
  if (m > kMaxMaterializedInterior) throw CountOverflow("H(" + std::to_string(a) + "," + std::to_string(b) + ")");
  out.reserve(std::size_t{1} << m);
  for (long k = m; k >= 0; --k) append_combinations(a, b, k, out);
  return out;
}

std::uint64_t hopscotch_count(long a, long b) {
  if (a <= 0 || b <= a) throw InvalidEndpoints(a, b);
  const long m = b - a - 1;
  if (m >= 63) throw CountOverflow("2^" + std::to_string(m));
  return std::uint64_t{1} << m;
}

HopscotchSeries translate_series(const HopscotchSeries& s, long xi) {
  if (xi < 0) throw InvalidArgument("translation must be non-negative");
  HopscotchSeries out = s;
  for (auto& seq : out)
    for (auto& v : seq.indices) v += xi;
  return out;
}

HopscotchCard::HopscotchCard(std::size_t beta, std::vector<HopscotchSeries> series)
    : beta_(beta), series_(std::move(series)) {
  if (beta_ < 2 || beta_ > kMaxBeta) throw CardTooLarge(beta_);
  if (series_.size() != beta_ - 1) throw InvalidArgument("card needs one series per column offset");
}

const HopscotchSeries& HopscotchCard::series(std::size_t j) const {
  if (j < 2 || j > beta_) throw InvalidArgument("card column " + std::to_string(j) + " outside [2, beta]");
  return series_[j - 2];
}

std::size_t HopscotchCard::total_sequences() const {
  std::size_t t = 0;
  for (const auto& s : series_) t += s.size();
  return t;
}

HopscotchCard build_card(std::size_t beta) {
  if (beta < 2 || beta > HopscotchCard::kMaxBeta) throw CardTooLarge(beta);
  std::vector<HopscotchSeries> series;
  series.reserve(beta - 1);
  for (std::size_t j = 2; j <= beta; ++j) series.push_back(hopscotch_series(1, static_cast<long>(j)));
  return HopscotchCard(beta, std::move(series));
}

void write_card(std::ostream& out, const HopscotchCard& card) {
  out << "HOPSCOTCH-CARD v1 beta=" << card.beta() << '\n';
  for (std::size_t j = 2; j <= card.beta(); ++j) {
    for (const auto& s : card.series(j)) {
      out << "j=" << j << ':';
      for (std::size_t t = 0; t < s.indices.size(); ++t) out << (t ? "," : " ") << s.indices[t];
      out << '\n';
    }
  }
}

HopscotchCard read_card(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) format_error("missing header", lineno);
  const std::string prefix = "HOPSCOTCH-CARD v1 beta=";
  if (line.rfind(prefix, 0) != 0) format_error("bad header", lineno);
  std::size_t beta = 0;
  try {
    std::size_t used = 0;
    beta = std::stoul(line.substr(prefix.size()), &used);
    if (prefix.size() + used != line.size()) format_error("bad beta", lineno);
  } catch (const std::logic_error&) {
    format_error("bad beta", lineno);
  }
  if (beta < 2 || beta > HopscotchCard::kMaxBeta) format_error("beta out of range", lineno);

  std::vector<HopscotchSeries> series(beta - 1);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("j=", 0) != 0) format_error("expected 'j=<col>:'", lineno);
    const auto colon = line.find(':');
    if (colon == std::string::npos) format_error("missing ':'", lineno);
    std::size_t j = 0;
    try {
      std::size_t used = 0;
      j = std::stoul(line.substr(2, colon - 2), &used);
      if (used != colon - 2) format_error("bad column", lineno);
    } catch (const std::logic_error&) {
      format_error("bad column", lineno);
    }
    if (j < 2 || j > beta) format_error("column outside [2, beta]", lineno);

    HopscotchSequence s;
    std::istringstream ls(line.substr(colon + 1));
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (tok.find_first_not_of(" ", used) != std::string::npos) format_error("bad index", lineno);
        s.indices.push_back(v);
      } catch (const std::logic_error&) {
        format_error("bad index", lineno);
      }
    }
    if (s.indices.size() < 2 || s.indices.front() != 1 || s.indices.back() != static_cast<long>(j))
      format_error("sequence endpoints must be 1 and j", lineno);
    for (std::size_t t = 1; t < s.indices.size(); ++t)
      if (s.indices[t] <= s.indices[t - 1]) format_error("sequence not strictly increasing", lineno);
    series[j - 2].push_back(std::move(s));
  }

  for (std::size_t j = 2; j <= beta; ++j) {
    const auto& sj = series[j - 2];
    if (sj.size() != (std::size_t{1} << (j - 2)))
      throw CardFormatError("column " + std::to_string(j) + " has " + std::to_string(sj.size()) + " sequences");
    std::set<std::vector<long>> uniq;
    for (const auto& s : sj) uniq.insert(s.indices);
    if (uniq.size() != sj.size()) throw CardFormatError("duplicate sequence in column " + std::to_string(j));
  }
  return HopscotchCard(beta, std::move(series));
}

void save_card(const HopscotchCard& card, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_card(out, card);
  if (!out) throw IoError("write failed for '" + path + "'");
}

HopscotchCard load_card(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_card(in);
}

}  // namespace combinv
