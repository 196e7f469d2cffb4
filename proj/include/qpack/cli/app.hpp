#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

/// Runs one command. args excludes the program name. Exit 0 on success, 1 on
/// usage or validation errors, 2 on I/O or parse errors.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qpack::cli
