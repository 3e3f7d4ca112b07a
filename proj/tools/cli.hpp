#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsaxi::cli {

enum Exit : int { kOk = 0, kUsage = 1, kOutside = 2, kNumerical = 3 };

/// Runs the command line `args` (without the program name); returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// x_i = sin(pi (2i+1-n) / (2n)): clustered toward both poles, x = 0 exactly when n is odd.
std::vector<double> solve_grid(int n);

}  // namespace nsaxi::cli
