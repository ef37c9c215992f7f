#include "combinv/random.hpp"

#include <cmath>
#include <random>

#include "combinv/error.hpp"

namespace combinv {

namespace {

Matrix upper_like(std::size_t n, std::mt19937_64& rng, bool unit) {
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution neg(0.5);
  Matrix A(n, n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (unit) {
      A(i, i) = 1.0;
    } else {
      const double d = mag(rng);
      A(i, i) = neg(rng) ? -d : d;
    }
    for (std::size_t j = i + 1; j < n; ++j) A(i, j) = off(rng) * scale;
  }
  return A;
}

}  // namespace

MatrixKind parse_matrix_kind(const std::string& name) {
  if (name == "unit-upper") return MatrixKind::UnitUpper;
  if (name == "upper") return MatrixKind::Upper;
  if (name == "unit-lower") return MatrixKind::UnitLower;
  if (name == "lower") return MatrixKind::Lower;
  if (name == "spd") return MatrixKind::Spd;
  if (name == "dense") return MatrixKind::Dense;
  if (name == "diag-dominant") return MatrixKind::DiagDominant;
  if (name == "int-upper") return MatrixKind::IntUpper;
  throw InvalidArgument("unknown matrix kind '" + name + "'");
}

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::UnitUpper: return "unit-upper";
    case MatrixKind::Upper: return "upper";
    case MatrixKind::UnitLower: return "unit-lower";
    case MatrixKind::Lower: return "lower";
    case MatrixKind::Spd: return "spd";
    case MatrixKind::Dense: return "dense";
    case MatrixKind::DiagDominant: return "diag-dominant";
    case MatrixKind::IntUpper: return "int-upper";
  }
  return "?";
}

Matrix random_matrix(MatrixKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("matrix order must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  switch (kind) {
    case MatrixKind::UnitUpper: return upper_like(n, rng, true);
    case MatrixKind::Upper: return upper_like(n, rng, false);
    case MatrixKind::UnitLower: return upper_like(n, rng, true).transpose();
    case MatrixKind::Lower: return upper_like(n, rng, false).transpose();
    case MatrixKind::Spd: {
      Matrix B(n, n);
      for (std::size_t k = 0; k < n * n; ++k) B.data()[k] = u(rng);
      Matrix A(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double s = 0.0;
          for (std::size_t k = 0; k < n; ++k) s += B(k, i) * B(k, j);
          A(i, j) = s;
        }
      // Symmetrize exactly and shift.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) A(j, i) = A(i, j);
        A(i, i) += static_cast<double>(n);
      }
      return A;
    }
    case MatrixKind::Dense: {
      Matrix A(n, n);
      for (std::size_t k = 0; k < n * n; ++k) A.data()[k] = u(rng);
      return A;
    }
    case MatrixKind::DiagDominant: {
      std::uniform_real_distribution<double> extra(0.5, 1.5);
      Matrix A(n, n);
      for (std::size_t k = 0; k < n * n; ++k) A.data()[k] = u(rng);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) s += std::abs(A(i, j));
        A(i, i) = s + extra(rng);
      }
      return A;
    }
    case MatrixKind::IntUpper: {
      std::uniform_int_distribution<int> v(-4, 4);
      Matrix A = identity(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) A(i, j) = v(rng);
      return A;
    }
  }
  throw InvalidArgument("unknown matrix kind");
}

}  // namespace combinv
