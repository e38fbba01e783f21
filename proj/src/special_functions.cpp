#include "cyclic/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace cyclic::special {
namespace {

constexpr double kSeriesRelTol = 1e-16;

// Above this q the terms of the entire series no longer fit in a double, so
// the sum is carried relative to its largest term.
constexpr double kDirectSeriesLimit = 1e5;

// value = mantissa * exp(log_scale)
struct ScaledValue {
    double mantissa;
    double log_scale;
};

// sum_{m >= 0} q^m / (m! Gamma(m + s + 1)), s >= -1/2, q >= 0.
ScaledValue entire_series(double s, double q)
{
    if (q == 0.0) {
        return {1.0 / std::tgamma(s + 1.0), 0.0};
    }
    auto ratio = [&](double m) { return q / ((m + 1.0) * (m + s + 1.0)); };

    if (q < kDirectSeriesLimit) {
        double term = 1.0 / std::tgamma(s + 1.0);
        double sum = term;
        for (int m = 0;; ++m) {
            term *= ratio(m);
            if (term < kSeriesRelTol * sum && ratio(m + 1) < 1.0) {
                break;
            }
            sum += term;
        }
        return {sum, 0.0};
    }

    // First m whose successor is smaller: (m+1)(m+s+1) >= q.
    const double b = s + 2.0;
    const double root = 0.5 * (-b + std::sqrt(b * b - 4.0 * (s + 1.0 - q)));
    const int peak = std::max(0, static_cast<int>(std::ceil(root)));
    const double log_peak = peak * std::log(q) - std::lgamma(peak + 1.0) - std::lgamma(peak + s + 1.0);

    double sum = 1.0;
    double term = 1.0;
    for (int m = peak;; ++m) {
        term *= ratio(m);
        if (term < kSeriesRelTol * sum) {
            break;
        }
        sum += term;
    }
    term = 1.0;
    for (int m = peak - 1; m >= 0; --m) {
        term /= ratio(m);
        if (term < kSeriesRelTol * sum) {
            break;
        }
        sum += term;
    }
    return {sum, log_peak};
}

void check_order(BesselOrder order)
{
    if (order.twice_order() < -1) {
        throw DomainError("Bessel order below -1/2 is not supported");
    }
}

// e^{-x} I_{n+1/2}(x) (n >= 0) or e^{-x} I_{-1/2}(x) (n = -1) from the finite
// hyperbolic expansion. Accurate when x is large compared with n^2.
double half_integer_scaled(int n, double x)
{
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
    const double decay = std::exp(-2.0 * x);
    if (n < 0) {
        return norm * (1.0 + decay);
    }
    double grow = 0.0;
    double fall = 0.0;
    double coef = 1.0;  // (n+k)! / (k! (n-k)! (2x)^k)
    for (int k = 0; k <= n; ++k) {
        grow += (k % 2 == 0 ? coef : -coef);
        fall += coef;
        coef *= static_cast<double>(n + k + 1) * (n - k) / ((k + 1.0) * 2.0 * x);
    }
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    return norm * (grow + sign * decay * fall);
}

bool use_half_integer_closed_form(BesselOrder order, double x)
{
    if (order.is_integer()) {
        return false;
    }
    const int n = (order.twice_order() - 1) / 2;
    return n <= 0 || x >= 2.0 * n * (n + 1.0);
}

}  // namespace

double bessel_i_scaled(BesselOrder order, double x)
{
    check_order(order);
    if (!(x >= 0.0)) {
        throw DomainError("bessel_i: argument must be non-negative");
    }
    const double nu = order.value();
    if (x == 0.0) {
        if (nu < 0.0) {
            throw DomainError("I_{-1/2} is singular at 0");
        }
        return nu == 0.0 ? 1.0 : 0.0;
    }
    if (use_half_integer_closed_form(order, x)) {
        const int n = order.twice_order() < 0 ? -1 : (order.twice_order() - 1) / 2;
        return half_integer_scaled(n, x);
    }
    const auto [mantissa, log_scale] = entire_series(nu, 0.25 * x * x);
    return mantissa * std::exp(nu * std::log(0.5 * x) + log_scale - x);
}

double bessel_i(BesselOrder order, double x)
{
    check_order(order);
    if (!(x >= 0.0)) {
        throw DomainError("bessel_i: argument must be non-negative");
    }
    const double nu = order.value();
    if (x == 0.0) {
        return bessel_i_scaled(order, x);
    }
    if (use_half_integer_closed_form(order, x)) {
        if (order.twice_order() == 1) {
            return std::sqrt(2.0 / (std::numbers::pi * x)) * std::sinh(x);
        }
        if (order.twice_order() == -1) {
            return std::sqrt(2.0 / (std::numbers::pi * x)) * std::cosh(x);
        }
        return bessel_i_scaled(order, x) * std::exp(x);
    }
    const auto [mantissa, log_scale] = entire_series(nu, 0.25 * x * x);
    if (log_scale == 0.0) {
        return mantissa * std::pow(0.5 * x, nu);
    }
    return mantissa * std::exp(nu * std::log(0.5 * x) + log_scale);
}

double bessel_s(int j, double y)
{
    if (j < 0 || !(y >= 0.0)) {
        throw DomainError("bessel_s: need j >= 0 and y >= 0");
    }
    const auto [mantissa, log_scale] = entire_series(j, y);
    return log_scale == 0.0 ? mantissa : mantissa * std::exp(log_scale);
}

double bessel_s_scaled(int j, double y)
{
    if (j < 0 || !(y >= 0.0)) {
        throw DomainError("bessel_s: need j >= 0 and y >= 0");
    }
    const auto [mantissa, log_scale] = entire_series(j, y);
    return mantissa * std::exp(log_scale - 2.0 * std::sqrt(y));
}

double KernelPoint::gap() const
{
    const double ct = params.c * t;
    const double au = std::abs(u);
    if (au > ct * (1.0 + 1e-12)) {
        throw DomainError("kernel point outside the support |u| <= ct");
    }
    return std::max(0.0, (ct - au) * (ct + au));
}

double KernelPoint::xi() const
{
    return params.lambda / params.c * std::sqrt(gap());
}

namespace {

template <class SeriesFn>
double kernel_combination(const KernelPoint& p, int t_order, int u_order, SeriesFn&& s)
{
    const double c = p.params.c;
    const double a = std::pow(p.params.lambda / (2.0 * c), 2);
    const double big_t = 2.0 * c * c * p.t;  // d/dt of c^2 t^2 - u^2
    const double u = p.u;

    if (u_order == 0) {
        switch (t_order) {
        case 0: return s(0);
        case 1: return big_t * a * s(1);
        case 2: return big_t * big_t * a * a * s(2) + 2.0 * c * c * a * s(1);
        case 3:
            return big_t * big_t * big_t * a * a * a * s(3)
                 + 3.0 * big_t * 2.0 * c * c * a * a * s(2);
        default: break;
        }
    }
    else if (t_order == 0 && u_order == 1) {
        return -2.0 * u * a * s(1);
    }
    else if (t_order == 0 && u_order == 2) {
        return 4.0 * u * u * a * a * s(2) - 2.0 * a * s(1);
    }
    else if (t_order == 1 && u_order == 2) {
        return big_t * (4.0 * u * u * a * a * a * s(3) - 2.0 * a * a * s(2));
    }
    throw DomainError("kernel_derivative: unsupported derivative orders");
}

}  // namespace

double kernel_derivative(const KernelPoint& p, int t_order, int u_order)
{
    const double y = std::pow(p.params.lambda / (2.0 * p.params.c), 2) * p.gap();
    return kernel_combination(p, t_order, u_order, [&](int j) { return bessel_s(j, y); });
}

double kernel_derivative_damped(const KernelPoint& p, int t_order, int u_order)
{
    const double y = std::pow(p.params.lambda / (2.0 * p.params.c), 2) * p.gap();
    const double damping = std::exp(2.0 * std::sqrt(y) - p.params.lambda * p.t);
    return kernel_combination(p, t_order, u_order,
                              [&](int j) { return damping * bessel_s_scaled(j, y); });
}

double kernel_integral(const ModelParams& params, double t, int m, int t_order)
{
    params.validate();
    if (!(t > 0.0) || m < 0) {
        throw DomainError("kernel_integral: need t > 0 and m >= 0");
    }
    const double c = params.c;
    const double lambda = params.lambda;
    const double lt = lambda * t;
    const double ct = c * t;

    if (m == 0) {
        switch (t_order) {
        case 0: return c / lambda * std::sinh(lt);
        case 1: return c * std::cosh(lt) - c;
        case 2: return c * lambda * std::sinh(lt) - 0.5 * c * lambda * lambda * t;
        case 3:
            return c * lambda * lambda * std::cosh(lt) - lambda * lambda * c
                 - std::pow(lambda, 4) * c * t * t / 8.0;
        default: throw DomainError("kernel_integral: unsupported (m, t_order) pair");
        }
    }

    const double half = 0.5 * (m + 1);
    const double gamma_half = std::tgamma(half);
    const double k = 2.0 * c * c * t / lambda;
    const double k_up = std::pow(k, half);
    const double i_up = bessel_i(BesselOrder::from_twice(m + 1), lt);
    const double i_down = bessel_i(BesselOrder::from_twice(m - 1), lt);

    switch (t_order) {
    case 0: return 0.5 * gamma_half * k_up * i_up;
    case 1: return 0.5 * lambda * k_up * gamma_half * i_down - c * std::pow(ct, m);
    case 2:
        return -0.5 * lambda * lambda * ct * std::pow(ct, m) - m * c * c * std::pow(ct, m - 1)
             + m * gamma_half * c * c * std::pow(k, 0.5 * (m - 1)) * i_down
             + 0.5 * lambda * lambda * gamma_half * k_up * i_up;
    default: throw DomainError("kernel_integral: unsupported (m, t_order) pair");
    }
}

}  // namespace cyclic::special
