#include "cyclic/pde_verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cyclic/analytic.hpp"
#include "cyclic/quadrature.hpp"
#include "cyclic/simulation.hpp"
#include "cyclic/special_functions.hpp"

namespace cyclic::pde {

void GridSpec::validate() const
{
    if (!(t0 > 0.0) || !(t1 >= t0)) {
        throw DomainError("grid needs 0 < t0 <= t1");
    }
    if (!(margin > 0.0 && margin < 0.5)) {
        throw DomainError("grid margin must lie in (0, 0.5)");
    }
    if (!(h0 > 0.0) || levels < 2 || levels > 20) {
        throw DomainError("grid needs h0 > 0 and 2..20 levels");
    }
    if (t_points < 1 || u_points < 1) {
        throw DomainError("grid needs at least one point per axis");
    }
}

namespace {

std::vector<double> linspace(double a, double b, int n)
{
    if (n == 1) {
        return {0.5 * (a + b)};
    }
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[i] = a + (b - a) * i / (n - 1);
    }
    return v;
}

void finish(ResidualReport& r)
{
    if (!r.exact()) {
        std::vector<double> hs;
        std::vector<double> ms;
        for (std::size_t i = 0; i < r.h.size(); ++i) {
            if (r.max_abs[i] > 0.0) {
                hs.push_back(r.h[i]);
                ms.push_back(r.max_abs[i]);
            }
        }
        if (hs.size() >= 2) {
            std::tie(r.order, r.fit_residual) = log_log_slope(hs, ms);
        }
    }
}

struct Accumulator {
    double max_abs = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;

    void add(double r)
    {
        if (!std::isfinite(r)) {
            max_abs = std::numeric_limits<double>::infinity();
        }
        max_abs = std::max(max_abs, std::abs(r));
        sum_sq += r * r;
        ++n;
    }
    double rms() const { return n ? std::sqrt(sum_sq / n) : 0.0; }
};

}  // namespace

std::vector<double> GridSpec::times() const
{
    return linspace(t0, t1, t_points);
}

std::vector<double> GridSpec::fractions() const
{
    return linspace(margin, 1.0 - margin, u_points);
}

bool ResidualReport::exact() const
{
    return !max_abs.empty()
        && std::all_of(max_abs.begin(), max_abs.end(), [&](double m) { return m <= exact_floor; });
}

bool ResidualReport::converges(double target, double band) const
{
    if (exact()) {
        return true;
    }
    return std::isfinite(order) && std::abs(order - target) <= band;
}

stats::TestReport to_test_report(const ResidualReport& r, double target, double band)
{
    const double stat = r.exact() ? *std::max_element(r.max_abs.begin(), r.max_abs.end()) : r.order;
    return {r.name, stat, std::numeric_limits<double>::quiet_NaN(), band, r.converges(target, band), r.h.size()};
}

std::pair<double, double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("slope fit needs two or more matching points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = std::log(y[i]) - (icept + slope * std::log(x[i]));
        ss += e * e;
    }
    return {slope, std::sqrt(ss / n)};
}

double kernel_identity_residual(const ModelParams& params, double t, double u)
{
    const special::KernelPoint kp{t, u, params};
    const double g = special::kernel_derivative(kp, 0, 0);
    const double g_tt = special::kernel_derivative(kp, 2, 0);
    const double g_uu = special::kernel_derivative(kp, 0, 2);
    const double c2 = params.c * params.c;
    const double l2 = params.lambda * params.lambda;
    const double scale = std::max({std::abs(g_tt), std::abs(c2 * g_uu), std::abs(l2 * g)});
    return (g_tt - c2 * g_uu - l2 * g) / scale;
}

ResidualReport klein_gordon_residual(const ModelParams& params, const GridSpec& grid)
{
    grid.validate();
    if (params.dim != 2 && params.dim != 3) {
        throw DomainError("Klein-Gordon residual needs d = 2 or 3");
    }
    const double c = params.c;
    const double l = params.lambda;
    auto p = [&](double t, double u) { return analytic::density_u(params, t, u); };

    ResidualReport rep;
    rep.name = "klein_gordon_d" + std::to_string(params.dim);
    for (int level = 0; level < grid.levels; ++level) {
        const double h = grid.step(level);
        Accumulator acc;
        for (double t : grid.times()) {
            for (double v : grid.fractions()) {
                const double u = v * c * t;
                if (t - h <= 0.0 || u - h < 0.0 || u + h >= c * (t - h)) {
                    throw DomainError("Klein-Gordon stencil leaves the open support");
                }
                const double p0 = p(t, u);
                const double pt_plus = p(t + h, u);
                const double pt_minus = p(t - h, u);
                const double p_tt = (pt_plus - 2.0 * p0 + pt_minus) / (h * h);
                const double p_t = (pt_plus - pt_minus) / (2.0 * h);
                const double p_uu = (p(t, u + h) - 2.0 * p0 + p(t, u - h)) / (h * h);
                acc.add(p_tt + 2.0 * l * p_t - c * c * p_uu);
            }
        }
        rep.h.push_back(h);
        rep.max_abs.push_back(acc.max_abs);
        rep.rms.push_back(acc.rms());
    }
    finish(rep);
    return rep;
}

ResidualReport planar_fourth_order_residual(const ModelParams& params, const GridSpec& grid, PlanarField field,
                                            bool w_form)
{
    grid.validate();
    const ModelParams planar = params.with_dim(2);
    planar.validate();
    const double c = params.c;
    const double l = params.lambda;

    auto f = [&](double x, double y, double t) {
        const double u = std::abs(x) + std::abs(y);
        const double p = analytic::density_u(planar, t, u);
        const double v = field == PlanarField::LayerUniform ? p / (4.0 * u) : p;
        return w_form ? std::exp(l * t) * v : v;
    };
    // Shift of the time operator: (d_t + lambda)^2 on f, d_t^2 on e^{lambda t} f.
    const double shift = w_form ? 0.0 : l;

    ResidualReport rep;
    rep.name = std::string("planar_fourth_order_") + (field == PlanarField::LayerUniform ? "layer" : "profile")
             + (w_form ? "_w" : "");
    const double ratios[] = {0.35, 0.5, 0.65};
    for (int level = 0; level < grid.levels; ++level) {
        const double h = grid.step(level);
        auto op_y = [&](double x, double y, double t) {
            const double f0 = f(x, y, t);
            const double fp = f(x, y, t + h);
            const double fm = f(x, y, t - h);
            const double time_part = (fp - 2.0 * f0 + fm) / (h * h) + 2.0 * shift * (fp - fm) / (2.0 * h)
                                   + shift * shift * f0;
            return time_part - c * c * (f(x, y + h, t) - 2.0 * f0 + f(x, y - h, t)) / (h * h);
        };
        auto op_xy = [&](double x, double y, double t) {
            const double g0 = op_y(x, y, t);
            const double gp = op_y(x, y, t + h);
            const double gm = op_y(x, y, t - h);
            const double time_part = (gp - 2.0 * g0 + gm) / (h * h) + 2.0 * shift * (gp - gm) / (2.0 * h)
                                   + shift * shift * g0;
            return time_part - c * c * (op_y(x + h, y, t) - 2.0 * g0 + op_y(x - h, y, t)) / (h * h);
        };

        Accumulator acc;
        for (double t : grid.times()) {
            for (double v : grid.fractions()) {
                for (double r : ratios) {
                    const double u = v * c * t;
                    const double x = r * u;
                    const double y = (1.0 - r) * u;
                    if (t - 2.0 * h <= 0.0 || std::min(x, y) - h <= 0.0 || u + 2.0 * h >= c * (t - 2.0 * h)) {
                        throw DomainError("planar stencil reaches an axis or the edge of the support");
                    }
                    const double l4 = l * l * l * l;
                    acc.add(op_xy(x, y, t) - l4 * f(x, y, t));
                }
            }
        }
        rep.h.push_back(h);
        rep.max_abs.push_back(acc.max_abs);
        rep.rms.push_back(acc.rms());
    }
    finish(rep);
    return rep;
}

std::pair<double, double> planar_velocity(int j)
{
    const sim::Direction d{(((j - 1) % 4) + 4) % 4 + 1};
    const double s = d.sign(2);
    return d.axis(2) == 0 ? std::pair{s, 0.0} : std::pair{0.0, s};
}

namespace {

// c <(alpha, beta), v_j>
double phase_rate(const ModelParams& params, int j, double alpha, double beta)
{
    const auto [vx, vy] = planar_velocity(j);
    return params.c * (alpha * vx + beta * vy);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b)
{
    if (b <= a) {
        return {0.0, 0.0};
    }
    const double re = quad::integrate([&](double s) { return f(s).real(); }, a, b, 1e-13);
    const double im = quad::integrate([&](double s) { return f(s).imag(); }, a, b, 1e-13);
    return {re, im};
}

}  // namespace

std::complex<double> cf_integral(const ModelParams& params, int n, int j, double alpha, double beta, double t)
{
    params.validate();
    if (params.dim != 2) {
        throw DomainError("characteristic functions are computed for planar motion");
    }
    if (n < 0 || n > 2) {
        throw DomainError("quadrature characteristic function supports n <= 2");
    }
    if (!(t >= 0.0)) {
        throw DomainError("time must be non-negative");
    }
    const double w0 = phase_rate(params, j, alpha, beta);
    const double w1 = phase_rate(params, j + 1, alpha, beta);
    const double w2 = phase_rate(params, j + 2, alpha, beta);
    const std::complex<double> i{0.0, 1.0};

    if (n == 0) {
        return std::exp(i * w0 * t);
    }
    if (n == 1) {
        return integrate_complex([&](double s) { return std::exp(i * (w0 * s + w1 * (t - s))); }, 0.0, t);
    }
    auto outer = [&](double s2) {
        const std::complex<double> inner = integrate_complex(
            [&](double s1) { return std::exp(i * (w0 * s1 + w1 * (s2 - s1))); }, 0.0, s2);
        return inner * std::exp(i * w2 * (t - s2));
    };
    return integrate_complex(outer, 0.0, t);
}

std::complex<double> conditional_cf_quadrature(const ModelParams& params, int n, int j, double alpha, double beta,
                                               double t)
{
    if (!(t > 0.0)) {
        throw DomainError("time must be positive");
    }
    const double norm = std::tgamma(n + 1.0) / std::pow(t, n);
    return norm * cf_integral(params, n, j, alpha, beta, t);
}

ResidualReport cf_recursion_check(const ModelParams& params, int n, int j, double alpha, double beta,
                                  const GridSpec& grid)
{
    grid.validate();
    if (n < 1 || n > 2) {
        throw DomainError("recursion check needs n in {1, 2}");
    }
    const std::complex<double> i{0.0, 1.0};
    const double w = phase_rate(params, j + n, alpha, beta);

    ResidualReport rep;
    rep.name = "cf_recursion_n" + std::to_string(n) + "_j" + std::to_string(j);
    for (int level = 0; level < grid.levels; ++level) {
        const double h = grid.step(level);
        Accumulator acc;
        for (double t : grid.times()) {
            if (t - h <= 0.0) {
                throw DomainError("recursion stencil reaches t = 0");
            }
            const auto fp = cf_integral(params, n, j, alpha, beta, t + h);
            const auto fm = cf_integral(params, n, j, alpha, beta, t - h);
            const auto f0 = cf_integral(params, n, j, alpha, beta, t);
            const auto prev = cf_integral(params, n - 1, j, alpha, beta, t);
            acc.add(std::abs((fp - fm) / (2.0 * h) - prev - i * w * f0));
        }
        rep.h.push_back(h);
        rep.max_abs.push_back(acc.max_abs);
        rep.rms.push_back(acc.rms());
    }
    finish(rep);
    return rep;
}

HeatLimitResult heat_limit_check(int dim, double t, const std::vector<double>& c_schedule, std::size_t count,
                                 std::uint64_t seed, double rel_tol)
{
    if (c_schedule.empty()) {
        throw DomainError("heat limit needs a non-empty speed schedule");
    }
    if (!(t > 0.0) || count < 2) {
        throw DomainError("heat limit needs t > 0 and at least two paths");
    }
    const double target = t / dim;
    HeatLimitResult out;
    bool ok = true;

    for (std::size_t level = 0; level < c_schedule.size(); ++level) {
        const double c = c_schedule[level];
        const ModelParams params{c, c * c, dim};
        const auto set = sim::simulate_ensemble(params, t, count, seed + level);
        const double n = static_cast<double>(count);

        std::vector<double> mean(static_cast<std::size_t>(dim), 0.0);
        std::vector<double> second(static_cast<std::size_t>(dim), 0.0);
        double q_sum = 0.0;
        double q_sq = 0.0;
        for (const auto& o : set.outcomes) {
            double q = 0.0;
            for (int i = 0; i < dim; ++i) {
                mean[i] += o.position[i];
                second[i] += o.position[i] * o.position[i];
                q += o.position[i] * o.position[i];
            }
            q /= dim;
            q_sum += q;
            q_sq += q * q;
        }
        HeatLimitLevel lv;
        lv.c = c;
        double var = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double m = mean[i] / n;
            const double v = second[i] / n - m * m;
            var += v;
            lv.max_abs_mean_z = std::max(lv.max_abs_mean_z, std::abs(m) / std::sqrt(v / n));
        }
        lv.variance = var / dim;
        const double qm = q_sum / n;
        lv.variance_se = std::sqrt(std::max(0.0, q_sq / n - qm * qm) / n);
        ok = ok && lv.max_abs_mean_z <= 3.0;
        if (level > 0) {
            const auto& prev = out.levels.back();
            const double band = 3.0 * std::hypot(prev.variance_se, lv.variance_se);
            ok = ok && std::abs(lv.variance - target) <= std::abs(prev.variance - target) + band;
        }
        out.levels.push_back(lv);
    }
    const double rel_err = std::abs(out.levels.back().variance - target) / target;
    ok = ok && rel_err <= rel_tol;
    out.report = {"heat_limit_d" + std::to_string(dim), rel_err, std::numeric_limits<double>::quiet_NaN(), rel_tol,
                  ok, count * c_schedule.size()};
    return out;
}

stats::TestReport normalization_check(const ModelParams& params, double t, double tol)
{
    const double integral = analytic::cdf_u(params, t, params.c * t);
    const double expected = analytic::ac_mass(params.dim, params.lambda * t);
    auto r = stats::tolerance_check("normalization_d" + std::to_string(params.dim), integral, expected, tol);
    return r;
}

}  // namespace cyclic::pde
