#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hilbert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). Results and error
/// objects are JSON on `out` unless --output names a file; usage text goes
/// to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hilbert::cli
