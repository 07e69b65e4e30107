#pragma once

// Command-line front end. Exit codes: 0 pass, 1 verdict failure or failed
// verification, 2 input, parse, schema or precondition errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace floer::cli {

/// Runs one command; `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

} // namespace floer::cli
