#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schatlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInconclusive = 2;

/// Full command-line driver; args excludes the program name. Reports go to
/// `out`, human diagnostics to `err`. Returns the process exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace schatlab::cli
