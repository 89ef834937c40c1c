#ifndef SAWKIT_CLI_HPP
#define SAWKIT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sawkit {

// Exit codes: 0 success, 2 usage/input, 3 resource, 4 identity violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitIdentity = 4;

struct RunConfig {
    std::string graph = "square";
    int n_max = 8;
    int depth = 8;
    bool mode_plain = true;
    bool mode_f = false;
    bool mode_b = false;
    bool mode_fb = false;
    int threads = 1;
    std::uint64_t seed = 1;
    std::string format = "csv"; // csv | json
    std::string out;            // empty: stdout
    double delta = 0.3;
    double tol = 0.02;
    int trials = 0; // tree-dim: 0 disables the percolation estimate
};

// Runs one CLI invocation (args exclude the program name); output and
// diagnostics go to the given streams.  Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace sawkit

#endif
