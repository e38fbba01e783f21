#include "cyclic/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "cyclic/errors.hpp"
#include "cyclic/kernels/batch.hpp"

namespace cyclic::stats {

namespace {

void check_sample(std::span<const double> x)
{
    if (x.size() < 10) {
        throw DomainError("KS test needs at least 10 values");
    }
    if (!std::is_sorted(x.begin(), x.end())) {
        throw DomainError("KS test input must be sorted ascending");
    }
}

}  // namespace

double kolmogorov_sf(double x)
{
    if (x <= 0.0) {
        return 1.0;
    }
    if (x < 1.18) {
        // Theta-function form, fast for small x.
        const double pi2 = M_PI * M_PI;
        const double w = std::sqrt(2.0 * M_PI) / x;
        double s = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double odd = 2.0 * k - 1.0;
            s += std::exp(-odd * odd * pi2 / (8.0 * x * x));
        }
        return std::clamp(1.0 - w * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        s += (k % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-18) {
            break;
        }
    }
    return std::clamp(s, 0.0, 1.0);
}

TestReport ks_one_sample(std::string name, std::span<const double> sorted, const std::function<double(double)>& cdf,
                         double level)
{
    check_sample(sorted);
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (i + 1.0) / n - f, f - i / n});
    }
    const double rn = std::sqrt(n);
    const double p = kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d);
    return {std::move(name), d, p, level, p > level, sorted.size()};
}

TestReport ks_two_sample(std::string name, std::span<const double> a, std::span<const double> b, double level)
{
    check_sample(a);
    check_sample(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double p = d == 0.0 ? 1.0 : kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d);
    return {std::move(name), d, p, level, p > level, a.size() + b.size()};
}

TestReport chi_square_masses(std::string name, std::span<const std::size_t> observed,
                             std::span<const double> expected, double level)
{
    if (observed.size() != expected.size() || observed.size() < 2) {
        throw DomainError("chi-square needs matching cell lists with at least two cells");
    }
    double total_mass = 0.0;
    for (double e : expected) {
        if (!(e > 0.0)) {
            throw DomainError("chi-square cell with zero expected mass");
        }
        total_mass += e;
    }
    std::size_t n = 0;
    for (std::size_t o : observed) {
        n += o;
    }
    if (n == 0) {
        throw DomainError("chi-square with no observations");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = static_cast<double>(n) * expected[i] / total_mass;
        const double diff = static_cast<double>(observed[i]) - e;
        stat += diff * diff / e;
    }
    const double dof = static_cast<double>(observed.size() - 1);
    const double p = boost::math::gamma_q(0.5 * dof, 0.5 * stat);
    return {std::move(name), stat, p, level, p > level, n};
}

TestReport moment_compare(std::string name, std::span<const double> values, double analytic, int m, double sigmas)
{
    if (values.empty()) {
        throw DomainError("moment comparison with no values");
    }
    const double n = static_cast<double>(values.size());
    const kernels::PowerSums s = kernels::power_sums(values, m);
    const double mean = s.sum_m / n;
    const double var = std::max(0.0, s.sum_2m / n - mean * mean) * n / std::max(1.0, n - 1.0);
    // Rounding floor so that degenerate samples (m = 0, constant data) are
    // not failed for a last-bit difference in the analytic value.
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(analytic));
    const double se = std::max(std::sqrt(var / n), floor);
    const double z = std::abs(mean - analytic) / se;
    return {std::move(name), z, std::numeric_limits<double>::quiet_NaN(), sigmas, z <= sigmas, values.size()};
}

TestReport proportion_compare(std::string name, std::size_t hits, std::size_t n, double p, double sigmas)
{
    if (n == 0) {
        throw DomainError("proportion comparison with no trials");
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    const double gap = std::abs(phat - p);
    const double z = se > 0.0 ? gap / se : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    return {std::move(name), z, std::numeric_limits<double>::quiet_NaN(), sigmas, z <= sigmas, n};
}

TestReport tolerance_check(std::string name, double value, double reference, double tolerance, bool relative)
{
    double err = std::abs(value - reference);
    if (relative && reference != 0.0) {
        err /= std::abs(reference);
    }
    const bool ok = std::isfinite(err) && err <= tolerance;
    return {std::move(name), err, std::numeric_limits<double>::quiet_NaN(), tolerance, ok, 0};
}

}  // namespace cyclic::stats
