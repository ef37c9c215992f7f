#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "combinv/flop_ledger.hpp"

namespace combinv {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  Matrix transpose() const;
  // Copy of the nr x nc block starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  double max_abs() const;
  bool all_finite() const;
  bool is_zero() const;

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class TriangularShape { UpperUnit, Upper, LowerUnit, Lower };

Matrix identity(std::size_t n);
Matrix zeros(std::size_t rows, std::size_t cols);
Matrix diagonal(const std::vector<double>& d);

bool is_identity(const Matrix& A);
bool is_upper(const Matrix& A);
bool is_lower(const Matrix& A);
bool has_shape(const Matrix& A, TriangularShape shape);

// Upper (lower) triangle including the diagonal, rest zeroed.
Matrix upper_part(const Matrix& A);
Matrix lower_part(const Matrix& A);
Matrix strict_upper_part(const Matrix& A);
Matrix strict_lower_part(const Matrix& A);

Matrix operator+(const Matrix& A, const Matrix& B);
Matrix operator-(const Matrix& A, const Matrix& B);
Matrix operator-(const Matrix& A);
Matrix operator*(double s, const Matrix& A);

// Element-wise add/sub with optional counting of one addsub per entry.
Matrix add(const Matrix& A, const Matrix& B, FlopLedger* ledger);
Matrix sub(const Matrix& A, const Matrix& B, FlopLedger* ledger);

double max_abs_residual(const Matrix& A, const Matrix& B);
double frobenius_norm(const Matrix& A);
// ||A - B||_F / max(||B||_F, tiny)
double relative_frobenius_error(const Matrix& A, const Matrix& B);

// Embed A in the top-left corner of an n x n identity.
Matrix pad_identity(const Matrix& A, std::size_t n);
Matrix pad_zero(const Matrix& A, std::size_t rows, std::size_t cols);

// |d| below this is treated as zero for a matrix of the given scale.
double singularity_tolerance(double max_abs_entry);
double singularity_tolerance(const Matrix& A);

struct DiagUnitSplit {
  Matrix D;
  Matrix Tunit;
};

// T = D * Tunit with D diagonal and Tunit unit upper.
DiagUnitSplit split_diag_unit(const Matrix& T, FlopLedger* ledger = nullptr);

}  // namespace combinv
