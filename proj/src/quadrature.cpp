#include "cyclic/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cyclic::quad {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double* error_estimate)
{
    if (a == b) {
        if (error_estimate) {
            *error_estimate = 0.0;
        }
        return 0.0;
    }
    // Boost 1.74 reports a spurious error floor on narrow intervals and then
    // bisects to full depth, so always integrate over [0, 1].
    const double width = b - a;
    auto g = [&](double x) { return f(a + width * x); };
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        g, 0.0, 1.0, 15, rel_tol, &err);
    if (error_estimate) {
        *error_estimate = err * std::abs(width);
    }
    return value * width;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::initializer_list<double> breakpoints, double rel_tol)
{
    double total = 0.0;
    double left = a;
    for (double bp : breakpoints) {
        if (bp > left && bp < b) {
            total += integrate(f, left, bp, rel_tol);
            left = bp;
        }
    }
    return total + integrate(f, left, b, rel_tol);
}

CumulativeTable::CumulativeTable(std::function<double(double)> density, double a, double b, int intervals)
    : density_(std::move(density)), a_(a), b_(b), h_((b - a) / intervals)
{
    cum_.resize(static_cast<std::size_t>(intervals) + 1);
    dens_.resize(cum_.size());
    cum_[0] = 0.0;
    dens_[0] = density_(a);
    for (int i = 1; i <= intervals; ++i) {
        const double x0 = a + (i - 1) * h_;
        const double x1 = i == intervals ? b : a + i * h_;
        cum_[i] = cum_[i - 1] + integrate(density_, x0, x1, 1e-14);
        dens_[i] = density_(x1);
    }
}

double CumulativeTable::operator()(double x) const
{
    if (!(x > a_)) {
        return 0.0;
    }
    if (x >= b_) {
        return total();
    }
    const std::size_t n = cum_.size() - 1;
    const std::size_t i = std::min(n - 1, static_cast<std::size_t>((x - a_) / h_));
    const double s = (x - (a_ + i * h_)) / h_;
    const double s2 = s * s;
    const double s3 = s2 * s;
    // Hermite basis on [0, 1].
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * cum_[i] + h10 * h_ * dens_[i] + h01 * cum_[i + 1] + h11 * h_ * dens_[i + 1];
}

}  // namespace cyclic::quad
