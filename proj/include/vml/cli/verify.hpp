#pragma once

#include <string>
#include <vector>

namespace vml {

struct VerifyCheck {
    std::string suite;
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    double seconds = 0.0;
    bool pass() const;
    std::string json() const;
    std::string summary() const;
};

std::vector<std::string> verify_suites();  // operator, projection, maxwell, transforms

// suite is one of verify_suites() or "all"; jobs > 1 runs suites
// concurrently. Throws ConfigError for an unknown suite.
VerifyReport run_verify(const std::string& suite, int jobs = 1);
std::vector<VerifyCheck> run_suite(const std::string& suite);

}  // namespace vml
