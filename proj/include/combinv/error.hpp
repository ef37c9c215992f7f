#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace combinv {

// Coarse classification used by the CLI to pick an exit code.
enum class ErrorKind {
  Numerical,  // singular pivot, rank deficiency, failed split
  Format,     // malformed file, I/O failure
  Argument,   // caller violated a precondition
  Timeout,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what) : Error(ErrorKind::Argument, "shape mismatch: " + what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::Argument, what) {}
};

// Numerical failures carry the offending index.
class IndexedNumericalError : public Error {
 public:
  IndexedNumericalError(const std::string& name, std::size_t index)
      : Error(ErrorKind::Numerical, name + " at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class SingularDiagonal : public IndexedNumericalError {
 public:
  explicit SingularDiagonal(std::size_t i) : IndexedNumericalError("singular diagonal", i) {}
};

class RankDeficient : public IndexedNumericalError {
 public:
  explicit RankDeficient(std::size_t column) : IndexedNumericalError("rank deficient column", column) {}
};

class ZeroPivot : public IndexedNumericalError {
 public:
  explicit ZeroPivot(std::size_t i) : IndexedNumericalError("zero pivot", i) {}
};

class SplitFailed : public IndexedNumericalError {
 public:
  explicit SplitFailed(std::size_t position) : IndexedNumericalError("triangular split failed", position) {}
};

class BlockPivotFailed : public IndexedNumericalError {
 public:
  explicit BlockPivotFailed(std::size_t iteration)
      : IndexedNumericalError("block pivot failed in iteration", iteration) {}
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(const std::string& what) : Error(ErrorKind::Numerical, "singular matrix: " + what) {}
};

class InvalidEndpoints : public Error {
 public:
  InvalidEndpoints(long a, long b)
      : Error(ErrorKind::Argument,
              "invalid Hopscotch endpoints (" + std::to_string(a) + ", " + std::to_string(b) + ")") {}
};

class CountOverflow : public Error {
 public:
  explicit CountOverflow(const std::string& what) : Error(ErrorKind::Argument, "count overflow: " + what) {}
};

class CardTooLarge : public Error {
 public:
  explicit CardTooLarge(std::size_t beta)
      : Error(ErrorKind::Argument, "card beta out of range [2, 24]: " + std::to_string(beta)) {}
};

class CardTooSmall : public Error {
 public:
  CardTooSmall(std::size_t n, std::size_t beta)
      : Error(ErrorKind::Argument,
              "matrix order " + std::to_string(n) + " exceeds card beta " + std::to_string(beta)) {}
};

class CardFormatError : public Error {
 public:
  explicit CardFormatError(const std::string& what) : Error(ErrorKind::Format, "card format: " + what) {}
};

class MatrixFormatError : public Error {
 public:
  explicit MatrixFormatError(const std::string& what) : Error(ErrorKind::Format, "matrix format: " + what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Format, "I/O: " + what) {}
};

class Timeout : public Error {
 public:
  explicit Timeout(const std::string& what) : Error(ErrorKind::Timeout, "timeout: " + what) {}
};

}  // namespace combinv
