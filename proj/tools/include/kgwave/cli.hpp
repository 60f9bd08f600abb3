#pragma once

// The kgwave command-line front end, callable in-process.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgwave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  // kgwave::Error from the library
inline constexpr int kExitUsage = 2;

// Bad flag combination; reported with the usage text and exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs one invocation. `args` excludes the program name. Summaries go to
// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// "a:b:n" -> n equispaced points from a to b inclusive (n = 1 gives a).
// Throws UsageError on malformed input.
std::vector<double> parse_grid(std::string_view spec);

// Calls fn(i) for i in [0, n) on up to `jobs` threads. Results must be
// written by index so the output order never depends on scheduling. The
// first exception thrown by any call is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn);

}  // namespace kgwave::cli

#include "kgwave/cli_parallel.hpp"
