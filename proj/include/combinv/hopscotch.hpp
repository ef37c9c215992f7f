#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace combinv {

// Strictly increasing index list with fixed endpoints.
struct HopscotchSequence {
  std::vector<long> indices;

  // (-1)^(len - 1)
  int sign() const { return (indices.size() % 2 == 0) ? -1 : 1; }
  bool operator==(const HopscotchSequence&) const = default;
};

using HopscotchSeries = std::vector<HopscotchSequence>;

// All sequences from a to b, one per subset of the open interval (a, b).
// Ordered by interior size descending, then lexicographically. H(a, a) is empty.
HopscotchSeries hopscotch_series(long a, long b);

// 2^(b - a - 1)
std::uint64_t hopscotch_count(long a, long b);

HopscotchSeries translate_series(const HopscotchSeries& s, long xi);

// Precomputed H(1, j) for 2 <= j <= beta.
class HopscotchCard {
 public:
  static constexpr std::size_t kMaxBeta = 24;

  HopscotchCard() = default;
  HopscotchCard(std::size_t beta, std::vector<HopscotchSeries> series);

  std::size_t beta() const { return beta_; }
  // H(1, j); requires 2 <= j <= beta.
  const HopscotchSeries& series(std::size_t j) const;
  std::size_t total_sequences() const;

  bool operator==(const HopscotchCard&) const = default;

 private:
  std::size_t beta_ = 0;
  std::vector<HopscotchSeries> series_;  // index j - 2
};

HopscotchCard build_card(std::size_t beta);

// File layout:
//   HOPSCOTCH-CARD v1 beta=<B>
//   j=<col>: i1,i2,...,ik      (one line per sequence)
void write_card(std::ostream& out, const HopscotchCard& card);
HopscotchCard read_card(std::istream& in);
void save_card(const HopscotchCard& card, const std::string& path);
HopscotchCard load_card(const std::string& path);

}  // namespace combinv
