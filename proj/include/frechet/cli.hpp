#ifndef FRECHET_CLI_HPP
#define FRECHET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace frechet::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kInvalid = 2;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; `in` backs "--pmf -".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace frechet::cli

#endif  // FRECHET_CLI_HPP
