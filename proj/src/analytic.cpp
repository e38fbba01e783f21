#include "cyclic/analytic.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "cyclic/kernels/batch.hpp"
#include "cyclic/quadrature.hpp"
#include "cyclic/special_functions.hpp"

namespace cyclic::analytic {

using special::BesselOrder;

namespace {

void check_time(double t)
{
    if (!(t > 0.0)) {
        throw DomainError("time must be positive");
    }
}

void check_density_dim(const ModelParams& params)
{
    params.validate();
    if (params.dim != 2 && params.dim != 3) {
        throw DomainError("closed-form unconditional density exists for d = 2, 3 only");
    }
}

double log_factorial(int k)
{
    return std::lgamma(k + 1.0);
}

// Edge point of the a.c. density integrals; the density has a kink there.
double edge_split(double ct)
{
    return ct * (1.0 - 1e-6);
}

}  // namespace

double poisson_pmf(int n, double lambda_t)
{
    if (n < 0) {
        return 0.0;
    }
    if (lambda_t == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(-lambda_t + n * std::log(lambda_t) - log_factorial(n));
}

double ac_mass(int dim, double lambda_t)
{
    if (dim < 1) {
        throw DomainError("ac_mass: dimension must be positive");
    }
    if (lambda_t <= 0.0) {
        return 0.0;
    }
    // P(N >= d) as the regularised lower incomplete gamma function.
    return boost::math::gamma_p(static_cast<double>(dim), lambda_t);
}

DensityCoefficients density_coefficients(const ModelParams& params)
{
    check_density_dim(params);
    const double l = params.lambda;
    if (params.dim == 2) {
        return {2, {-l, 1.0, 2.0 / l}};
    }
    return {3, {-l, -3.0, 2.0 / l, 4.0 / (l * l)}};
}

double density_u(const ModelParams& params, double t, double u)
{
    check_density_dim(params);
    check_time(t);
    const double c = params.c;
    const double l = params.lambda;
    const double ct = c * t;
    if (!(u >= 0.0) || u > ct * (1.0 + 1e-12)) {
        return 0.0;
    }
    u = std::min(u, ct);

    const double a = (l / (2.0 * c)) * (l / (2.0 * c));
    const double y = a * ((ct - u) * (ct + u));
    // S_j(y) e^{-lambda t} = e^{2 sqrt(y) - lambda t} * scaled S_j(y), 2 sqrt(y) <= lambda t.
    const double damp = std::exp(2.0 * std::sqrt(y) - l * t);
    const double odd = l / c * a * (ct * ct + u * u) * special::bessel_s_scaled(2, y);
    const double even = params.dim == 2
                            ? l * l * t / (2.0 * c) * special::bessel_s_scaled(1, y)
                            : l * l * t / (2.0 * c) * a * (ct * ct + 3.0 * u * u) * special::bessel_s_scaled(3, y);
    return damp * (odd + even);
}

void density_u_batch(const ModelParams& params, double t, std::span<const double> u, std::span<double> out)
{
    check_density_dim(params);
    check_time(t);
    if (out.size() < u.size()) {
        throw DomainError("density_u_batch: output span too short");
    }
    if (params.lambda * t <= kernels::kBatchMaxLambdaT) {
        kernels::density_series({params.dim, params.c, params.lambda, t}, u, out);
        return;
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = density_u(params, t, u[i]);
    }
}

double density_u_closed_form(const ModelParams& params, double t, double u)
{
    params.validate();
    check_time(t);
    if (params.dim != 2) {
        throw DomainError("the I0/I1 representation is for d = 2");
    }
    const double c = params.c;
    const double l = params.lambda;
    const double ct = c * t;
    if (!(u >= 0.0) || u >= ct) {
        throw DomainError("closed form needs 0 <= u < ct (0/0 at the edge)");
    }
    const double z = (ct - u) * (ct + u);
    const double root = std::sqrt(z);
    const double xi = l / c * root;
    const double s = ct * ct + u * u;
    const double damp = std::exp(xi - l * t);
    const double i0 = special::bessel_i_scaled(BesselOrder::integer(0), xi);
    const double i1 = special::bessel_i_scaled(BesselOrder::integer(1), xi);
    return damp * (l / c * s / z * i0 + (l * t * z - 2.0 * s) / (z * root) * i1);
}

double density_u_coefficients(const ModelParams& params, double t, double u)
{
    const DensityCoefficients dc = density_coefficients(params);
    check_time(t);
    const double ct = params.c * t;
    if (!(u >= 0.0) || u > ct) {
        return 0.0;
    }
    const special::KernelPoint kp{t, u, params};
    double sum = 0.0;
    for (std::size_t i = 0; i < dc.coeffs.size(); ++i) {
        sum += dc.coeffs[i] * special::kernel_derivative_damped(kp, static_cast<int>(i), 0);
    }
    return sum / params.c;
}

namespace {

// Density of V = U/(ct) given N = n on [0, 1], for the parity classes of the
// telegraph (d = 1) and cyclic (d = 2, 3) motions.
double conditional_density_v(int dim, int n, double v)
{
    const double w = (1.0 - v) * (1.0 + v);  // 1 - v^2
    const bool even = n % 2 == 0;

    // Even line shared by d = 1, 2: n = 2k+2, k >= 0.
    auto even_line = [&](int k) {
        const double log_c = log_factorial(2 * k + 2) - log_factorial(k) - log_factorial(k + 1)
                           - (2 * k + 1) * std::log(2.0);
        return std::exp(log_c) * std::pow(w, k);
    };
    // Odd line shared by d = 2, 3: n = 2k+1, k >= 1.
    auto odd_line = [&](int k) {
        const double log_c = log_factorial(2 * k + 1) - 2 * k * std::log(2.0) - log_factorial(k - 1)
                           - log_factorial(k + 1);
        return std::exp(log_c) * std::pow(w, k - 1) * (1.0 + v * v);
    };

    switch (dim) {
    case 1:
        if (even) {
            return even_line((n - 2) / 2);
        }
        else {
            const int k = (n - 1) / 2;
            const double log_c = log_factorial(2 * k + 1) - 2.0 * log_factorial(k) - 2 * k * std::log(2.0);
            return std::exp(log_c) * std::pow(w, k);
        }
    case 2:
        return even ? even_line((n - 2) / 2) : odd_line((n - 1) / 2);
    case 3:
        if (even) {
            const int k = (n - 2) / 2;
            const double log_c = log_factorial(2 * k + 2) - log_factorial(k + 2) - log_factorial(k - 1)
                               - (2 * k + 1) * std::log(2.0);
            return std::exp(log_c) * std::pow(w, k - 1) * (1.0 + 3.0 * v * v);
        }
        return odd_line((n - 1) / 2);
    default: break;
    }
    throw DomainError("conditional laws are available for d = 1, 2, 3");
}

void check_conditional(const ModelParams& params, int n)
{
    params.validate();
    if (params.dim > 3) {
        throw DomainError("conditional laws are available for d = 1, 2, 3");
    }
    if (n < params.dim) {
        throw SingularStratumError("N(t) < d: the particle lies on a boundary stratum of S_ct");
    }
}

}  // namespace

double conditional_density_u(const ModelParams& params, int n, double t, double u)
{
    check_conditional(params, n);
    check_time(t);
    const double ct = params.c * t;
    if (!(u >= 0.0) || u > ct) {
        return 0.0;
    }
    return conditional_density_v(params.dim, n, u / ct) / ct;
}

std::vector<StratumMass> singular_masses(const ModelParams& params, double t)
{
    params.validate();
    check_time(t);
    if (params.dim > 3) {
        throw DomainError("singular masses are tabulated for d = 1, 2, 3");
    }
    const int d = params.dim;
    const double lt = params.lambda * t;
    std::vector<StratumMass> out;
    const double vertex_mass = std::exp(-lt) / (2.0 * d);
    for (int j = 1; j <= 2 * d; ++j) {
        out.push_back({sim::Stratum::vertex(), j, vertex_mass});
    }
    for (int k = 1; k < d; ++k) {
        out.push_back({sim::Stratum::face(k), 0, poisson_pmf(k, lt)});
    }
    return out;
}

double cdf_u(const ModelParams& params, double t, double u)
{
    check_density_dim(params);
    check_time(t);
    const double ct = params.c * t;
    if (!(u > 0.0)) {
        return 0.0;
    }
    u = std::min(u, ct);
    auto f = [&](double x) { return density_u(params, t, x); };
    return quad::integrate(f, 0.0, u, {edge_split(ct)});
}

double conditional_cdf_u(const ModelParams& params, int n, double t, double u)
{
    check_conditional(params, n);
    check_time(t);
    const double ct = params.c * t;
    if (!(u > 0.0)) {
        return 0.0;
    }
    u = std::min(u, ct);
    auto f = [&](double x) { return conditional_density_u(params, n, t, x); };
    return quad::integrate(f, 0.0, u, {edge_split(ct)});
}

double mean_u(const ModelParams& params, double t)
{
    params.validate();
    check_time(t);
    if (params.dim != 2) {
        throw DomainError("mean_u is the planar mean");
    }
    const double c = params.c;
    const double l = params.lambda;
    const double lt = l * t;
    const double i0 = special::bessel_i_scaled(BesselOrder::integer(0), lt);
    const double i1 = special::bessel_i_scaled(BesselOrder::integer(1), lt);
    return (c * t + 2.0 * c / l) * i0 + c * t * i1 - 2.0 * c / l * std::exp(-lt);
}

double moment_u(const ModelParams& params, int m, double t)
{
    params.validate();
    check_time(t);
    if (params.dim != 2) {
        throw DomainError("moment_u is the planar moment");
    }
    if (m < 0) {
        throw DomainError("moment order must be non-negative");
    }
    const double c = params.c;
    const double l = params.lambda;
    const double lt = l * t;
    const double ct = c * t;
    const double g = std::tgamma(0.5 * (m + 1));
    const double k = 2.0 * c * c * t / l;
    const double k_up = std::pow(k, 0.5 * (m + 1));
    const double k_down = std::pow(k, 0.5 * (m - 1));
    // e^{-lambda t} I_nu(lambda t)
    const double i_up = special::bessel_i_scaled(BesselOrder::from_twice(m + 1), lt);
    const double i_down = special::bessel_i_scaled(BesselOrder::from_twice(m - 1), lt);

    const double edge = m == 0 ? 0.0 : 2.0 / l * m * c * c * std::pow(ct, m - 1) * std::exp(-lt);
    return (0.5 * l * g * k_up * i_up - edge + g * i_down * (0.5 * l * k_up + 2.0 * m * c * c / l * k_down)) / c;
}

double conditional_mean_u(int n)
{
    if (n < 3) {
        throw SingularStratumError("conditional mean needs N(t) >= 3 in d = 3");
    }
    if (n % 2 == 1) {
        const int k = (n - 1) / 2;
        return std::exp(log_factorial(2 * k + 1) + std::log(k + 2.0) - (2 * k + 1) * std::log(2.0)
                        - 2.0 * log_factorial(k + 1));
    }
    const int k = (n - 2) / 2;
    return std::exp(log_factorial(2 * k + 1) + std::log(k + 4.0) - (2 * k + 1) * std::log(2.0)
                    - log_factorial(k) - log_factorial(k + 2));
}

double catalan(int k)
{
    if (k < 0) {
        throw DomainError("Catalan index must be non-negative");
    }
    double value = 1.0;  // C_0
    for (int i = 0; i < k; ++i) {
        value = value * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
    }
    return value;
}

double conditional_mean_catalan(int n)
{
    if (n < 3) {
        throw SingularStratumError("conditional mean needs N(t) >= 3 in d = 3");
    }
    if (n % 2 == 1) {
        const int k = (n - 1) / 2;
        return (k + 2.0) * (k + 2.0) * catalan(k + 1) / (std::ldexp(1.0, 2 * k + 2) * (k + 1.0));
    }
    const int k = (n - 2) / 2;
    return (k + 4.0) * catalan(k + 1) / std::ldexp(1.0, 2 * k + 2);
}

double conditional_mean_ratio(int k)
{
    if (k < 1) {
        throw DomainError("ratio defined for k >= 1");
    }
    return (k + 2.0) * (k + 2.0) / ((k + 1.0) * (k + 4.0));
}

}  // namespace cyclic::analytic
