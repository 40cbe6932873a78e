// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include "pscat/verify.hpp"

#include <cstdio>
#include <string>
#include <vector>

int main() {
    pscat::VerifyOptions opts;
    opts.seed = 1;
    opts.random_cases = 20;
    std::vector<pscat::SuiteReport> reports = pscat::run_all_suites(opts);

    struct Criterion {
        int number;
        const char* suite;
        const char* label;
    };
    const std::vector<Criterion> criteria{
        {1, "functional-equation", "Fourier transform acts by the Gamma factors; root numbers unimodular"},
        {2, "conductor-operator", "log|x| is z d/dz; the conductor operator acts by H"},
        {3, "orthogonality", "incoming space is orthogonal to its Fourier transform (50 pairs)"},
        {4, "interacting-space", "dimension table, kernel of K, diagonal equals T"},
        {5, "time-delay", "T = S D(conj S), signed identities, positivity, time delay sums"},
        {6, "trace-formula", "trace of Z(f) equals the integral against T"},
        {7, "weil-term", "graded trace plus f(1) equals the integral against H"},
        {8, "connes", "cutoff traces: grid oracle, spectral, closed form, sector oracle"},
        {9, "kernel-lemma", "shifted double integrals sum to the diagonal integral"},
    };

    bool all = true;
    bool numeric_all = true;
    for (const auto& c : criteria) {
        const pscat::SuiteReport* rep = nullptr;
        for (const auto& r : reports)
            if (r.suite == c.suite) rep = &r;
        bool ok = rep != nullptr && rep->exact_passed() && !rep->checks.empty();
        if (rep) numeric_all = numeric_all && rep->numeric_passed();
        std::printf("%s criterion %d [%s]: %s (%zu checks)\n", ok ? "PASS" : "FAIL", c.number, c.suite, c.label,
                    rep ? rep->checks.size() : std::size_t{0});
        if (rep)
            for (const auto& ch : rep->checks)
                if (!ch.exact_ok) std::printf("    failed: %s %s\n", ch.name.c_str(), ch.detail.c_str());
        all = all && ok;
    }
    std::printf("%s criterion 10 [numeric shadow]: every exact check re-verified within %.0e\n",
                numeric_all ? "PASS" : "FAIL", pscat::kNumericTolerance);
    for (const auto& r : reports)
        for (const auto& ch : r.checks)
            if (!ch.numeric_ok) std::printf("    numeric mismatch: %s %s\n", ch.name.c_str(), ch.detail.c_str());
    all = all && numeric_all;
    std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
    return all ? 0 : 1;
}
