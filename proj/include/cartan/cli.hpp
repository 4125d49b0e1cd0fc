#ifndef CARTAN_CLI_HPP
#define CARTAN_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cartan/homogeneous3d.hpp"
#include "cartan/serialization.hpp"

namespace cartan::cli {

/// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage,
/// parse or I/O error.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs the tool. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default tolerance, overridden by CARTAN_TOL when it holds a positive real.
double environment_tolerance();

/// "a=lo:step:hi,b=lo:step:hi,k=lo:step:hi" (a bare value is a one-point
/// axis). Points come back in lexicographic (a, b, k) order. Throws ParseError.
std::vector<h3d::Params3D> parse_grid(const std::string& spec);

/// Aligned text table of classification reports. Throws ArgumentError if a
/// report is not a classification record.
std::string emit_table(const std::vector<io::Json>& reports);

}  // namespace cartan::cli

#endif  // CARTAN_CLI_HPP
