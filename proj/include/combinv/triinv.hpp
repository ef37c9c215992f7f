#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "combinv/flop_ledger.hpp"
#include "combinv/hopscotch.hpp"
#include "combinv/matmul.hpp"
#include "combinv/matrix.hpp"

namespace combinv {

struct TriInvResult {
  Matrix inverse;
  // Operations spent in this call, present when a ledger was passed in.
  std::optional<FlopLedger> ledger;
};

enum class TriMethod { Combinatorial, CritStar, Crit, Combrit };

TriMethod parse_tri_method(const std::string& name);
std::string to_string(TriMethod m);

struct TriInvOptions {
  TriMethod method = TriMethod::Crit;
  const HopscotchCard* card = nullptr;  // required by Combinatorial and Combrit
  std::size_t base = 0;                 // Combrit leaf size, 0 means card beta
  std::size_t cutoff = kDefaultStrassenCutoff;
};

// Entry (i, j), i < j, of the inverse of a unit upper T, summed over H(i, j)
// taken from the card. Reads only T and the card.
double combinatorial_element(const Matrix& T, const HopscotchCard& card, std::size_t i, std::size_t j,
                             FlopLedger* ledger = nullptr);

TriInvResult invert_unit_upper_combinatorial(const Matrix& T, const HopscotchCard& card,
                                             FlopLedger* ledger = nullptr);
// General upper: R = D * Tunit, inverse = Tunit^-1 * D^-1.
TriInvResult invert_upper_combinatorial(const Matrix& R, const HopscotchCard& card, FlopLedger* ledger = nullptr);

TriInvResult invert_unit_upper_crit_star(const Matrix& T, FlopLedger* ledger = nullptr);
TriInvResult invert_upper_crit(const Matrix& R, FlopLedger* ledger = nullptr);

TriInvResult invert_upper_combrit(const Matrix& A, const HopscotchCard& card, std::size_t base,
                                  FlopLedger* ledger = nullptr, std::size_t cutoff = kDefaultStrassenCutoff);

// Smallest base * beta^k that is >= n.
std::size_t combrit_padded_size(std::size_t n, std::size_t beta, std::size_t base);

TriInvResult invert_upper(const Matrix& R, const TriInvOptions& opts, FlopLedger* ledger = nullptr);
// Transpose, invert as upper, transpose back.
TriInvResult invert_lower(const Matrix& L, const TriInvOptions& opts, FlopLedger* ledger = nullptr);

}  // namespace combinv
