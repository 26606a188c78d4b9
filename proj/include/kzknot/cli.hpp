#pragma once

#include <iosfwd>

namespace kzknot {

namespace exit_code {
constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kNotAKnot = 3;
constexpr int kNonConvergence = 4;
constexpr int kSelftestFailure = 5;
}  // namespace exit_code

// Entry point of the kzknot command; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kzknot
