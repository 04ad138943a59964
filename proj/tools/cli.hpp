#ifndef OVERPART_TOOLS_CLI_HPP
#define OVERPART_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "overpart/identities.hpp"

namespace overpart::cli {

enum ExitCode : int { ok = 0, violation = 1, usage = 2 };

/// Runs the command line `args` (without the program name). Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// ok when every report passed, violation otherwise.
int exit_code(const std::vector<identities::IdentityReport>& reports);

/// One JSON object per report row, newline terminated.
std::string to_json_lines(const identities::IdentityReport& report);
/// CSV rows (no header) for a report.
std::string to_csv_rows(const identities::IdentityReport& report);
inline constexpr const char* verify_csv_header = "identity_id,params,n,lhs,rhs,pass";

} // namespace overpart::cli

#endif
