#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgo::cli {

enum ExitCode : int {
    kOk = 0,
    /// Homogeneity comparison found a mismatch (or a check failed).
    kMismatch = 1,
    kConfigError = 2,
    kNumericalError = 3,
};

/// Validated settings shared by the `run` and `homogeneity` commands.
/// Loaded from an optional JSON file (keys match the long flag names) and
/// then overridden by flags.
struct RunConfig {
    std::string algorithm = "p";  // p | ei | direct
    std::string objective = "sin3x";
    bool has_bounds = false;
    double lower = 0.0;
    double upper = 1.0;
    std::string kernel = "exp";  // exp | sqexp
    double decay = 5.0;
    std::string estimator = "mle";  // mle | sample
    bool has_epsilon = false;
    double epsilon = 0.1;
    int budget = 20;
    int resolution = 1001;
    std::string a = "1";
    std::string b = "0";
    std::string out;
    bool refine = false;
    bool counterexample = false;
};

/// Entry point used by the executable; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgo::cli
