#include "combinv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "combinv/error.hpp"

namespace combinv {

namespace {

void require_same_shape(const Matrix& A, const Matrix& B, const char* what) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw ShapeMismatch(std::string(what) + ": " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                        " vs " + std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw InvalidArgument("matrix data length " + std::to_string(data_.size()) + " != " +
                          std::to_string(rows * cols));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) std::copy_n(row(r0 + i) + c0, nc, b.row(i));
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw ShapeMismatch("set_block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i) std::copy_n(b.row(i), b.cols(), row(r0 + i) + c0);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

Matrix identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix diagonal(const std::vector<double>& d) {
  Matrix D(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
  return D;
}

bool is_identity(const Matrix& A) {
  if (!A.square()) return false;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (A(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

bool is_upper(const Matrix& A) {
  if (!A.square()) return false;
  for (std::size_t i = 1; i < A.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (A(i, j) != 0.0) return false;
  return true;
}

bool is_lower(const Matrix& A) {
  if (!A.square()) return false;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = i + 1; j < A.cols(); ++j)
      if (A(i, j) != 0.0) return false;
  return true;
}

bool has_shape(const Matrix& A, TriangularShape shape) {
  auto unit_diag = [&] {
    for (std::size_t i = 0; i < A.rows(); ++i)
      if (A(i, i) != 1.0) return false;
    return true;
  };
  switch (shape) {
    case TriangularShape::UpperUnit: return is_upper(A) && unit_diag();
    case TriangularShape::Upper: return is_upper(A);
    case TriangularShape::LowerUnit: return is_lower(A) && unit_diag();
    case TriangularShape::Lower: return is_lower(A);
  }
  return false;
}

Matrix upper_part(const Matrix& A) {
  Matrix U(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = i; j < A.cols(); ++j) U(i, j) = A(i, j);
  return U;
}

Matrix lower_part(const Matrix& A) {
  Matrix L(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j <= i && j < A.cols(); ++j) L(i, j) = A(i, j);
  return L;
}

Matrix strict_upper_part(const Matrix& A) {
  Matrix U(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = i + 1; j < A.cols(); ++j) U(i, j) = A(i, j);
  return U;
}

Matrix strict_lower_part(const Matrix& A) {
  Matrix L(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < i && j < A.cols(); ++j) L(i, j) = A(i, j);
  return L;
}

Matrix add(const Matrix& A, const Matrix& B, FlopLedger* ledger) {
  require_same_shape(A, B, "add");
  Matrix C(A.rows(), A.cols());
  const std::size_t n = A.rows() * A.cols();
  for (std::size_t k = 0; k < n; ++k) C.data()[k] = A.data()[k] + B.data()[k];
  count_addsub(ledger, n);
  return C;
}

Matrix sub(const Matrix& A, const Matrix& B, FlopLedger* ledger) {
  require_same_shape(A, B, "sub");
  Matrix C(A.rows(), A.cols());
  const std::size_t n = A.rows() * A.cols();
  for (std::size_t k = 0; k < n; ++k) C.data()[k] = A.data()[k] - B.data()[k];
  count_addsub(ledger, n);
  return C;
}

Matrix operator+(const Matrix& A, const Matrix& B) { return add(A, B, nullptr); }
Matrix operator-(const Matrix& A, const Matrix& B) { return sub(A, B, nullptr); }

Matrix operator-(const Matrix& A) {
  Matrix C = A;
  for (std::size_t k = 0; k < A.rows() * A.cols(); ++k) C.data()[k] = -C.data()[k];
  return C;
}

Matrix operator*(double s, const Matrix& A) {
  Matrix C = A;
  for (std::size_t k = 0; k < A.rows() * A.cols(); ++k) C.data()[k] *= s;
  return C;
}

double max_abs_residual(const Matrix& A, const Matrix& B) {
  require_same_shape(A, B, "max_abs_residual");
  double m = 0.0;
  for (std::size_t k = 0; k < A.rows() * A.cols(); ++k) m = std::max(m, std::abs(A.data()[k] - B.data()[k]));
  return m;
}

double frobenius_norm(const Matrix& A) {
  double s = 0.0;
  for (double v : A.values()) s += v * v;
  return std::sqrt(s);
}

double relative_frobenius_error(const Matrix& A, const Matrix& B) {
  require_same_shape(A, B, "relative_frobenius_error");
  double num = 0.0;
  for (std::size_t k = 0; k < A.rows() * A.cols(); ++k) {
    const double d = A.data()[k] - B.data()[k];
    num += d * d;
  }
  const double den = frobenius_norm(B);
  return std::sqrt(num) / std::max(den, std::numeric_limits<double>::min());
}

Matrix pad_identity(const Matrix& A, std::size_t n) {
  if (!A.square() || n < A.rows()) throw ShapeMismatch("pad_identity");
  if (n == A.rows()) return A;
  Matrix P = identity(n);
  P.set_block(0, 0, A);
  return P;
}

Matrix pad_zero(const Matrix& A, std::size_t rows, std::size_t cols) {
  if (rows < A.rows() || cols < A.cols()) throw ShapeMismatch("pad_zero");
  if (rows == A.rows() && cols == A.cols()) return A;
  Matrix P(rows, cols);
  P.set_block(0, 0, A);
  return P;
}

double singularity_tolerance(double max_abs_entry) {
  return std::ldexp(std::max(1.0, max_abs_entry), -40);
}

double singularity_tolerance(const Matrix& A) { return singularity_tolerance(A.max_abs()); }

DiagUnitSplit split_diag_unit(const Matrix& T, FlopLedger* ledger) {
  if (!T.square()) throw ShapeMismatch("split_diag_unit needs a square matrix");
  const std::size_t n = T.rows();
  const double tol = singularity_tolerance(T);
  DiagUnitSplit out{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double d = T(i, i);
    if (std::abs(d) < tol) throw SingularDiagonal(i);
    out.D(i, i) = d;
    out.Tunit(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) out.Tunit(i, j) = T(i, j) / d;
  }
  count_div(ledger, n * (n - 1) / 2);
  return out;
}

}  // namespace combinv
