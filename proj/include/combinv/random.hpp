#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "combinv/matrix.hpp"

namespace combinv {

enum class MatrixKind {
  UnitUpper,     // unit diagonal, off-diagonal U(-1, 1) / n
  Upper,         // off-diagonal U(-1, 1) / n, diagonal magnitude U(0.5, 2) with random sign
  UnitLower,     // transpose of UnitUpper
  Lower,         // transpose of Upper
  Spd,           // B^T B + n I, B entries U(-1, 1)
  Dense,         // entries U(-1, 1)
  DiagDominant,  // dense U(-1, 1) with each diagonal above its row's off-diagonal sum
  IntUpper,      // unit diagonal, integer off-diagonal entries in [-4, 4]
};

MatrixKind parse_matrix_kind(const std::string& name);
std::string to_string(MatrixKind kind);

Matrix random_matrix(MatrixKind kind, std::size_t n, std::uint64_t seed);

}  // namespace combinv
