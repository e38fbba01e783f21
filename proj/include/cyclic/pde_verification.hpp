#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cyclic/params.hpp"
#include "cyclic/statistics.hpp"

namespace cyclic::pde {

/// Evaluation points and step schedule of a refinement study. Points lie at
/// t in [t0, t1] and u / (ct) in [margin, 1 - margin]; the step h halves per
/// level starting from h0.
struct GridSpec {
    double t0 = 0.5;
    double t1 = 1.5;
    double margin = 0.2;
    double h0 = 0.04;
    int levels = 4;
    int t_points = 5;
    int u_points = 9;

    /// Throws DomainError unless 0 < t0 <= t1, margin in (0, 0.5), h0 > 0,
    /// levels >= 2 and point counts are positive.
    void validate() const;

    std::vector<double> times() const;
    /// Fractions u / (ct) of the evaluation points.
    std::vector<double> fractions() const;
    double step(int level) const { return h0 / static_cast<double>(1 << level); }
};

struct ResidualReport {
    std::string name;
    std::vector<double> h;
    std::vector<double> max_abs;
    std::vector<double> rms;
    double order = 0.0;         ///< least-squares slope of log max_abs against log h
    double fit_residual = 0.0;  ///< RMS misfit of that line, in log units
    double exact_floor = 1e-10; ///< residuals below this everywhere count as exact

    bool exact() const;
    /// Exact, or order within target +- band.
    bool converges(double target = 2.0, double band = 0.3) const;
};

/// Converts to a report row: statistic = order (or the largest residual when
/// exact), tolerance = band.
stats::TestReport to_test_report(const ResidualReport& r, double target = 2.0, double band = 0.3);

/// Least-squares slope of log(y) against log(x) and its RMS misfit.
std::pair<double, double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// g_tt - c^2 g_uu - lambda^2 g from the analytic kernel derivatives, divided
/// by the largest of the three terms.
double kernel_identity_residual(const ModelParams& params, double t, double u);

/// r = p_tt + 2 lambda p_t - c^2 p_uu on the density of U (d = 2, 3), by
/// central differences.
ResidualReport klein_gordon_residual(const ModelParams& params, const GridSpec& grid);

/// Point density whose planar fourth-order residual is evaluated.
enum class PlanarField {
    LayerUniform,  ///< f(x, y, t) = p(|x|+|y|, t) / (4 (|x|+|y|))
    RadialProfile  ///< f(x, y, t) = p(|x|+|y|, t)
};

/// (L_x L_y - lambda^4) f with L_s = (d_t + lambda)^2 - c^2 d_s^2, on points
/// in the open first quadrant. With w_form the equivalent operator
/// (d_t^2 - c^2 d_x^2)(d_t^2 - c^2 d_y^2) - lambda^4 acts on e^{lambda t} f.
/// Throws DomainError when a stencil would reach an axis or the edge u = ct.
ResidualReport planar_fourth_order_residual(const ModelParams& params, const GridSpec& grid,
                                            PlanarField field = PlanarField::LayerUniform, bool w_form = false);

/// Planar direction velocity (cos, sin) of direction j (1..4, wrapping).
std::pair<double, double> planar_velocity(int j);

/// F_n^j(t) = int_{0<s_1<...<s_n<t} exp(i <(alpha, beta), X(t)>) ds for a
/// planar path started along d_j with switches at s_1..s_n. n <= 2.
std::complex<double> cf_integral(const ModelParams& params, int n, int j, double alpha, double beta, double t);

/// E[exp(i alpha X + i beta Y) | N(t) = n, initial direction d_j]
/// = n! / t^n F_n^j(t). n <= 2, otherwise DomainError.
std::complex<double> conditional_cf_quadrature(const ModelParams& params, int n, int j, double alpha,
                                               double beta, double t);

/// dF_n^j/dt - F_{n-1}^j - i c <(alpha, beta), v_{j+n}> F_n^j by central
/// differences at t-points of the grid, n in {1, 2}.
ResidualReport cf_recursion_check(const ModelParams& params, int n, int j, double alpha, double beta,
                                  const GridSpec& grid);

struct HeatLimitLevel {
    double c = 0.0;
    double variance = 0.0;  ///< per-coordinate variance, pooled over axes
    double variance_se = 0.0;
    double max_abs_mean_z = 0.0;  ///< largest |mean X_i| in standard errors
};

struct HeatLimitResult {
    stats::TestReport report;
    std::vector<HeatLimitLevel> levels;
};

/// Simulates `count` paths at each c of the schedule with lambda = c^2 and
/// compares the per-coordinate variance to t / d. Passes iff the last level
/// is within rel_tol, the error does not grow along the schedule beyond 3
/// standard errors and every mean is within 3 standard errors of zero.
HeatLimitResult heat_limit_check(int dim, double t, const std::vector<double>& c_schedule, std::size_t count,
                                 std::uint64_t seed, double rel_tol = 0.05);

/// |int_0^{ct} p du - ac_mass| < tol.
stats::TestReport normalization_check(const ModelParams& params, double t, double tol = 1e-8);

}  // namespace cyclic::pde
