// Acceptance driver: one PASS/FAIL line per criterion, failing checks listed
// beneath it. Exit status 0 iff every selected criterion passed.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclic/verify.hpp"

using namespace cyclic;

namespace {

const char* const kTitles[verify::kCriteria + 1] = {
    "telegraph controls (d = 1 conditional laws)",
    "boundary mass, d = 2",
    "strata masses and vertex uniformity, d = 3",
    "uniform radius given N = 2, d = 2",
    "conditional laws, d = 2 and 3, n = 3..6",
    "conditional means, d = 3",
    "normalization of the absolutely continuous part",
    "mean and moments, d = 2",
    "agreement of density representations",
    "mixture over the event count",
    "finite-difference PDE residuals",
    "characteristic-function recursions",
    "heat-equation limit",
    "cross-dimension equality in law",
};

bool report(int criterion, const std::vector<verify::Check>& checks)
{
    const bool ok = verify::verdict(checks);
    std::size_t failed = 0;
    for (const auto& c : checks) {
        failed += !c.report.pass;
    }
    std::printf("%s criterion %2d  %-48s (%zu checks, %zu failed)\n", ok ? "PASS" : "FAIL", criterion,
                kTitles[criterion], checks.size(), failed);
    for (const auto& c : checks) {
        if (!c.report.pass) {
            std::printf("    %s %-40s statistic=%.6g p=%.4g tol=%.4g\n", c.blocking ? "fail" : "warn",
                        c.report.name.c_str(), c.report.statistic, c.report.p_value, c.report.tolerance);
        }
    }
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    int criterion = -1;
    verify::VerifyConfig cfg;
    app.add_option("--criterion", criterion, "1..13, 0 for the controls; omit for all")
        ->check(CLI::Range(0, verify::kCriteria));
    app.add_option("--seed", cfg.seed)->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        bool ok = true;
        const int first = criterion < 0 ? 0 : criterion;
        const int last = criterion < 0 ? verify::kCriteria : criterion;
        for (int k = first; k <= last; ++k) {
            const auto checks = k == 0 ? verify::run_controls(cfg) : verify::run_criterion(k, cfg);
            ok = report(k, checks) && ok;
        }
        return ok ? EXIT_SUCCESS : EXIT_FAILURE;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
