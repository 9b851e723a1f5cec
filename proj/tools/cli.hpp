#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gaussn::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
    kExitNumerical = 3,
};

/// Runs one CLI invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyCheck {
    std::string suite;
    std::string name;
    bool passed = false;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

/// Suites: fisher, h, table1, quadrature, or all.
std::vector<VerifyCheck> run_verify_suite(const std::string& suite, double quad_tol);

}  // namespace gaussn::cli
