#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

namespace cyclic::stats {

/// Outcome of one statistical or numerical check.
struct TestReport {
    std::string name;
    double statistic = 0.0;
    double p_value = 0.0;  ///< NaN when the test has no p-value
    double tolerance = 0.0;
    bool pass = false;
    std::size_t sample_size = 0;
};

inline constexpr double kDefaultLevel = 0.01;

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

/// One-sample KS of sorted values against a CDF that reaches 1 at the top of
/// the support. Pass iff p > level. Throws DomainError for unsorted input or
/// fewer than 10 values.
TestReport ks_one_sample(std::string name, std::span<const double> sorted, const std::function<double(double)>& cdf,
                         double level = kDefaultLevel);

/// Two-sample KS of sorted inputs. Pass iff p > level.
TestReport ks_two_sample(std::string name, std::span<const double> a, std::span<const double> b,
                         double level = kDefaultLevel);

/// Pearson chi-square of counts against cell probabilities (normalised to sum
/// to one), dof = cells - 1. Pass iff p > level.
TestReport chi_square_masses(std::string name, std::span<const std::size_t> observed,
                             std::span<const double> expected, double level = kDefaultLevel);

/// Sample mean of x^m against an analytic value. Pass iff the gap is within
/// sigmas * sd(x^m) / sqrt(n); the statistic is the gap in standard errors.
TestReport moment_compare(std::string name, std::span<const double> values, double analytic, int m,
                          double sigmas = 3.0);

/// Binomial proportion check: |k/n - p| <= sigmas * sqrt(p(1-p)/n).
TestReport proportion_compare(std::string name, std::size_t hits, std::size_t n, double p, double sigmas = 3.0);

/// Deterministic check |value - reference| <= tolerance (absolute, or relative
/// to |reference| when relative is set). The statistic is the error.
TestReport tolerance_check(std::string name, double value, double reference, double tolerance,
                           bool relative = false);

}  // namespace cyclic::stats
