#pragma once

#include <cstdint>

namespace combinv {

// Operation counters for a single traced computation. Negation is not counted.
struct FlopLedger {
  std::uint64_t mul = 0;
  std::uint64_t addsub = 0;
  std::uint64_t div = 0;
  std::uint64_t cmp = 0;
  std::uint64_t swap = 0;

  // mul + addsub + div, the combined arithmetic count.
  std::uint64_t total() const { return mul + addsub + div; }

  FlopLedger& operator+=(const FlopLedger& o) {
    mul += o.mul;
    addsub += o.addsub;
    div += o.div;
    cmp += o.cmp;
    swap += o.swap;
    return *this;
  }

  friend FlopLedger operator-(FlopLedger a, const FlopLedger& b) {
    a.mul -= b.mul;
    a.addsub -= b.addsub;
    a.div -= b.div;
    a.cmp -= b.cmp;
    a.swap -= b.swap;
    return a;
  }

  bool operator==(const FlopLedger&) const = default;
};

// Helpers that tolerate a null ledger.
inline void count_mul(FlopLedger* l, std::uint64_t n) { if (l) l->mul += n; }
inline void count_addsub(FlopLedger* l, std::uint64_t n) { if (l) l->addsub += n; }
inline void count_div(FlopLedger* l, std::uint64_t n) { if (l) l->div += n; }
inline void count_cmp(FlopLedger* l, std::uint64_t n) { if (l) l->cmp += n; }
inline void count_swap(FlopLedger* l, std::uint64_t n) { if (l) l->swap += n; }

}  // namespace combinv
