#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace combinv::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;
constexpr int kFormat = 3;

// "a..b" or "a,b,c". With doubling, "a..b" yields a, 2a, 4a, ... up to b.
std::vector<std::size_t> parse_sizes(const std::string& text, bool doubling);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace combinv::cli
