#include "combinv/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "combinv/error.hpp"

namespace combinv {

namespace {

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

double parse_double(const std::string& tok) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw MatrixFormatError("bad number '" + tok + "'");
  if (!std::isfinite(v)) throw MatrixFormatError("non-finite value '" + tok + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw MatrixFormatError("missing header");
  std::istringstream hdr(line);
  long long r = 0, c = 0;
  std::string extra;
  if (!(hdr >> r >> c) || (hdr >> extra)) throw MatrixFormatError("header must be 'rows cols'");
  if (r <= 0 || c <= 0) throw MatrixFormatError("dimensions must be positive");
  Matrix A(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (!next_line(in, line)) throw MatrixFormatError("expected " + std::to_string(r) + " rows, got " + std::to_string(i));
    std::istringstream ls(line);
    std::string tok;
    std::size_t j = 0;
    while (ls >> tok) {
      if (j >= A.cols()) throw MatrixFormatError("row " + std::to_string(i) + " has too many values");
      A(i, j++) = parse_double(tok);
    }
    if (j != A.cols()) throw MatrixFormatError("row " + std::to_string(i) + " has too few values");
  }
  if (next_line(in, line)) throw MatrixFormatError("trailing data after last row");
  return A;
}

void write_matrix(std::ostream& out, const Matrix& A) {
  out << A.rows() << ' ' << A.cols() << '\n';
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(A(i, j));
    }
    out << '\n';
  }
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_matrix(in);
}

void save_matrix(const std::string& path, const Matrix& A) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_matrix(out, A);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace combinv
