#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace pscat {

// One identity checked twice: exactly, and through the complex embedding.
struct CheckResult {
    std::string name;
    bool exact_ok = true;
    bool numeric_ok = true;
    std::string detail;
    bool passed() const { return exact_ok && numeric_ok; }
};

struct SuiteReport {
    std::string suite;
    std::string summary;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool exact_passed() const;
    bool numeric_passed() const;
    bool passed() const { return exact_passed() && numeric_passed(); }
    std::size_t failures() const;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    // Random cases per randomized family.
    int random_cases = 20;
};

// Tolerance of the numeric shadow run.
inline constexpr double kNumericTolerance = 1e-9;

// Suite names in the fixed reporting order.
const std::vector<std::string>& suite_names();
const std::string& suite_summary(const std::string& name);

// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const VerifyOptions& options);
// Every suite; suites run concurrently, results in the fixed order.
std::vector<SuiteReport> run_all_suites(const VerifyOptions& options);

// Numeric tolerance test scaled by the magnitude of the values.
bool numerically_close(std::complex<double> a, std::complex<double> b, double tol = kNumericTolerance);

}  // namespace pscat
