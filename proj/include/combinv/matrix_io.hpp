#pragma once

#include <iosfwd>
#include <string>

#include "combinv/matrix.hpp"

namespace combinv {

// Text format: "rows cols" on the first line, then one line per row with
// space-separated values. Values are written in shortest round-trip form.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& A);

Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& A);

std::string format_double(double v);

}  // namespace combinv
