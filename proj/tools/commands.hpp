// commands.hpp: phasekit command-line front end.

#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace phasekit::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3 };

// "a:b:n" -> n evenly spaced values from a to b inclusive (n >= 1).
std::vector<double> parse_range(std::string_view text);
// "re", "re+imi", "re-imi", "imi".
std::complex<double> parse_complex(std::string_view text);

int run(int argc, char** argv);

}  // namespace phasekit::cli
