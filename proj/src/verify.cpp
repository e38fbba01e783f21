#include "cyclic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "cyclic/analytic.hpp"
#include "cyclic/pde_verification.hpp"
#include "cyclic/quadrature.hpp"
#include "cyclic/rng.hpp"
#include "cyclic/simulation.hpp"
#include "cyclic/special_functions.hpp"

namespace cyclic::verify {

std::optional<Suite> parse_suite(std::string_view name)
{
    if (name == "distributions") return Suite::Distributions;
    if (name == "moments") return Suite::Moments;
    if (name == "pde") return Suite::Pde;
    if (name == "limits") return Suite::Limits;
    if (name == "conjecture") return Suite::Conjecture;
    if (name == "all") return Suite::All;
    return std::nullopt;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h = (h ^ ch) * 0x100000001b3ULL;
    }
    return h;
}

// Every ensemble gets its own seed, fixed by the run seed and a tag.
std::uint64_t seed_for(const VerifyConfig& cfg, std::string_view tag)
{
    return substream_seed(cfg.seed, fnv1a(tag));
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

Check blocking(int criterion, stats::TestReport r)
{
    return {criterion, true, std::move(r)};
}

// Sorted U / (ct) of an ensemble with c = t = 1 conditioned on N = n.
std::vector<double> conditioned_radii(const VerifyConfig& cfg, int dim, int n, std::string_view tag)
{
    const ModelParams params{1.0, 1.0, dim};
    return sim::simulate_ensemble(params, 1.0, cfg.count, seed_for(cfg, tag), n).sorted_radii();
}

quad::CumulativeTable conditional_table(int dim, int n)
{
    const ModelParams params{1.0, 1.0, dim};
    return quad::CumulativeTable([=](double u) { return analytic::conditional_density_u(params, n, 1.0, u); },
                                 0.0, 1.0);
}

stats::TestReport ks_conditional(const VerifyConfig& cfg, int dim, int n, const std::string& name)
{
    const auto radii = conditioned_radii(cfg, dim, n, name);
    const auto table = conditional_table(dim, n);
    const double k = cfg.perturb_density;
    return stats::ks_one_sample(name, radii, [&](double v) { return std::min(1.0, k * table(v)); });
}

std::vector<Check> criterion_boundary_mass(const VerifyConfig& cfg)
{
    const ModelParams params{1.0, 1.0, 2};
    const auto set = sim::simulate_ensemble(params, 1.0, cfg.count, seed_for(cfg, "boundary_mass"));
    const auto hits = std::count_if(set.outcomes.begin(), set.outcomes.end(), [](const auto& o) {
        return o.stratum.kind != sim::StratumKind::Interior;
    });
    const double expected = 2.0 * std::exp(-1.0);
    return {blocking(1, stats::proportion_compare("boundary_mass_d2_lt1", static_cast<std::size_t>(hits),
                                                  set.size(), expected))};
}

std::vector<Check> criterion_strata(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    for (double lt : {0.5, 1.0, 2.0}) {
        const ModelParams params{1.0, lt, 3};
        const std::string tag = "strata_d3_lt" + fmt(lt);
        const auto set = sim::simulate_ensemble(params, 1.0, cfg.count, seed_for(cfg, tag));
        std::vector<std::size_t> cells(4, 0);
        std::vector<std::size_t> vertices(6, 0);
        for (const auto& o : set.outcomes) {
            switch (o.stratum.kind) {
            case sim::StratumKind::Vertex:
                ++cells[0];
                ++vertices[static_cast<std::size_t>(o.final_direction.index - 1)];
                break;
            case sim::StratumKind::BoundaryFace: ++cells[static_cast<std::size_t>(o.stratum.order)]; break;
            case sim::StratumKind::Interior: ++cells[3]; break;
            }
        }
        const double p0 = analytic::poisson_pmf(0, lt);
        const double p1 = analytic::poisson_pmf(1, lt);
        const double p2 = analytic::poisson_pmf(2, lt);
        const std::vector<double> expected{p0, p1, p2, 1.0 - p0 - p1 - p2};
        out.push_back(blocking(2, stats::chi_square_masses(tag, cells, expected)));
        const std::vector<double> uniform(6, 1.0 / 6.0);
        out.push_back(blocking(2, stats::chi_square_masses("vertex_uniformity_d3_lt" + fmt(lt), vertices, uniform)));
    }
    return out;
}

std::vector<Check> criterion_uniformity(const VerifyConfig& cfg)
{
    const auto radii = conditioned_radii(cfg, 2, 2, "uniform_n2");
    const double k = cfg.perturb_density;
    return {blocking(3, stats::ks_one_sample("conditional_uniform_d2_n2", radii,
                                             [&](double v) { return std::min(1.0, k * v); }))};
}

std::vector<Check> criterion_conditional_laws(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    for (int dim : {2, 3}) {
        for (int n = 3; n <= 6; ++n) {
            const std::string name = "conditional_law_d" + std::to_string(dim) + "_n" + std::to_string(n);
            out.push_back(blocking(4, ks_conditional(cfg, dim, n, name)));
        }
    }
    return out;
}

std::vector<Check> criterion_conditional_means(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    for (int n = 3; n <= 5; ++n) {
        const std::string name = "conditional_mean_mc_d3_n" + std::to_string(n);
        const auto radii = conditioned_radii(cfg, 3, n, name);
        out.push_back(blocking(5, stats::moment_compare(name, radii, analytic::conditional_mean_u(n), 1)));
    }
    const ModelParams params{1.0, 1.0, 3};
    double worst = 0.0;
    double worst_catalan = 0.0;
    for (int n = 3; n <= 12; ++n) {
        const double q = quad::integrate(
            [&](double v) { return v * analytic::conditional_density_u(params, n, 1.0, v); }, 0.0, 1.0, 1e-14);
        worst = std::max(worst, std::abs(analytic::conditional_mean_u(n) - q));
        worst_catalan = std::max(worst_catalan,
                                 std::abs(analytic::conditional_mean_catalan(n) - analytic::conditional_mean_u(n)));
    }
    out.push_back(blocking(5, stats::tolerance_check("conditional_mean_quadrature_d3_n3_12", worst, 0.0, 1e-10)));
    out.push_back(blocking(5, stats::tolerance_check("conditional_mean_catalan_d3_n3_12", worst_catalan, 0.0, 1e-12)));
    double worst_ratio = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const double r = analytic::conditional_mean_u(2 * k + 1) / analytic::conditional_mean_u(2 * k + 2);
        worst_ratio = std::max(worst_ratio, std::abs(r - analytic::conditional_mean_ratio(k)));
    }
    out.push_back(blocking(5, stats::tolerance_check("conditional_mean_ratio_d3_k1_5", worst_ratio, 0.0, 1e-12)));
    return out;
}

std::vector<Check> criterion_normalization(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    for (int dim : {2, 3}) {
        for (double lt : {0.5, 1.0, 2.0, 5.0}) {
            const ModelParams params{1.0, lt, dim};
            const double integral = cfg.perturb_density * analytic::cdf_u(params, 1.0, 1.0);
            out.push_back(blocking(6, stats::tolerance_check("normalization_d" + std::to_string(dim) + "_lt" + fmt(lt),
                                                             integral, analytic::ac_mass(dim, lt), 1e-8)));
        }
    }
    return out;
}

// int_0^{ct} u^m p du + (ct)^m P(N < 2), the full planar moment.
double moment_oracle(const ModelParams& params, double t, int m)
{
    const double ct = params.c * t;
    const double lt = params.lambda * t;
    const double ac = quad::integrate([&](double u) { return std::pow(u, m) * analytic::density_u(params, t, u); },
                                      0.0, ct, {ct * (1.0 - 1e-6)}, 1e-14);
    return ac + std::pow(ct, m) * std::exp(-lt) * (1.0 + lt);
}

std::vector<Check> criterion_moments(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    const ModelParams unit{1.0, 1.0, 2};
    const double mean = analytic::mean_u(unit, 1.0);
    out.push_back(blocking(7, stats::tolerance_check("mean_quadrature_d2", mean, moment_oracle(unit, 1.0, 1), 1e-8)));

    const auto set = sim::simulate_ensemble(unit, 1.0, cfg.count, seed_for(cfg, "mean_mc"));
    const auto radii = set.radii();
    out.push_back(blocking(7, stats::moment_compare("mean_mc_d2", radii, mean, 1)));
    out.push_back(blocking(7, stats::moment_compare("second_moment_mc_d2", radii, analytic::moment_u(unit, 2, 1.0), 2)));

    const ModelParams other{1.5, 2.0, 2};
    for (const auto& [params, t, tag] : {std::tuple{unit, 1.0, "a"}, std::tuple{other, 0.7, "b"}}) {
        double worst = 0.0;
        for (int m = 0; m <= 6; ++m) {
            const double oracle = moment_oracle(params, t, m);
            worst = std::max(worst, std::abs(analytic::moment_u(params, m, t) - oracle) / oracle);
        }
        out.push_back(blocking(7, stats::tolerance_check(std::string("moments_m0_6_quadrature_") + tag, worst, 0.0,
                                                         1e-8)));
    }
    out.push_back(blocking(7, stats::tolerance_check("moment_m0_is_one", analytic::moment_u(unit, 0, 1.0), 1.0,
                                                     1e-14)));
    out.push_back(blocking(7, stats::tolerance_check("moment_m1_is_mean", analytic::moment_u(unit, 1, 1.0), mean,
                                                     1e-14, true)));
    return out;
}

std::vector<Check> criterion_representations()
{
    std::vector<Check> out;
    for (const auto& [c, l, t] : {std::tuple{1.0, 1.0, 1.0}, std::tuple{1.5, 2.0, 0.7}}) {
        const double ct = c * t;
        const ModelParams p2{c, l, 2};
        const ModelParams p3{c, l, 3};
        double coeff2 = 0.0, closed2 = 0.0, coeff3 = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double u = ct * (k + 0.5) / 1000.0;
            const double s2 = analytic::density_u(p2, t, u);
            const double s3 = analytic::density_u(p3, t, u);
            coeff2 = std::max(coeff2, std::abs(analytic::density_u_coefficients(p2, t, u) - s2) / s2);
            closed2 = std::max(closed2, std::abs(analytic::density_u_closed_form(p2, t, u) - s2) / s2);
            coeff3 = std::max(coeff3, std::abs(analytic::density_u_coefficients(p3, t, u) - s3) / s3);
        }
        const std::string tag = "_c" + fmt(c) + "_l" + fmt(l) + "_t" + fmt(t);
        out.push_back(blocking(8, stats::tolerance_check("series_vs_coefficients_d2" + tag, coeff2, 0.0, 1e-9)));
        out.push_back(blocking(8, stats::tolerance_check("series_vs_bessel_i0_i1_d2" + tag, closed2, 0.0, 1e-9)));
        out.push_back(blocking(8, stats::tolerance_check("series_vs_coefficients_d3" + tag, coeff3, 0.0, 1e-9)));
    }
    return out;
}

std::vector<Check> criterion_mixture()
{
    std::vector<Check> out;
    for (int dim : {2, 3}) {
        for (double lt : {0.5, 1.0, 2.0}) {
            const ModelParams params{1.0, lt, dim};
            double worst = 0.0;
            for (int k = 0; k < 100; ++k) {
                const double u = (k + 0.5) / 100.0;
                double mix = 0.0;
                for (int n = dim; n <= 60; ++n) {
                    mix += analytic::poisson_pmf(n, lt) * analytic::conditional_density_u(params, n, 1.0, u);
                }
                worst = std::max(worst, std::abs(mix - analytic::density_u(params, 1.0, u)));
            }
            out.push_back(blocking(9, stats::tolerance_check("mixture_d" + std::to_string(dim) + "_lt" + fmt(lt), worst,
                                                             0.0, 1e-8)));
        }
    }
    return out;
}

pde::GridSpec planar_grid()
{
    pde::GridSpec g;
    g.t0 = 0.9;
    g.t1 = 1.1;
    g.margin = 0.3;
    g.h0 = 0.04;
    g.levels = 3;
    g.t_points = 3;
    g.u_points = 5;
    return g;
}

std::vector<Check> criterion_pde()
{
    std::vector<Check> out;
    for (int dim : {2, 3}) {
        const auto r = pde::klein_gordon_residual(ModelParams{1.0, 1.0, dim}, pde::GridSpec{});
        out.push_back(blocking(10, pde::to_test_report(r)));
    }
    const ModelParams planar{1.0, 1.0, 2};
    out.push_back(blocking(10, pde::to_test_report(pde::planar_fourth_order_residual(planar, planar_grid()))));
    out.push_back(blocking(10, pde::to_test_report(
                                   pde::planar_fourth_order_residual(planar, planar_grid(),
                                                                     pde::PlanarField::LayerUniform, true))));
    // The radial profile p(|x|+|y|, t) itself, same operator.
    out.push_back({10, false, pde::to_test_report(pde::planar_fourth_order_residual(
                                  planar, planar_grid(), pde::PlanarField::RadialProfile))});

    double worst = 0.0;
    for (const auto& params : {ModelParams{1.0, 1.0, 2}, ModelParams{1.5, 2.0, 2}}) {
        for (double t : {0.5, 1.0, 2.0}) {
            for (double v : {0.0, 0.25, 0.5, 0.75, 0.99}) {
                worst = std::max(worst, std::abs(pde::kernel_identity_residual(params, t, v * params.c * t)));
            }
        }
    }
    out.push_back(blocking(10, stats::tolerance_check("kernel_klein_gordon_identity", worst, 0.0, 1e-10)));
    return out;
}

std::vector<Check> criterion_cf(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    const ModelParams planar{1.0, 1.0, 2};
    pde::GridSpec grid;
    grid.h0 = 0.1;
    grid.levels = 4;
    const std::pair<double, double> pairs[] = {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
    for (int n = 1; n <= 2; ++n) {
        for (int j = 1; j <= 4; ++j) {
            for (const auto& [a, b] : pairs) {
                auto r = pde::cf_recursion_check(planar, n, j, a, b, grid);
                r.name += "_a" + fmt(a) + "_b" + fmt(b);
                out.push_back(blocking(11, pde::to_test_report(r)));
            }
        }
    }
    for (int n = 0; n <= 2; ++n) {
        const std::string tag = "cf_mc_n" + std::to_string(n);
        const auto set = sim::simulate_ensemble(planar, 1.0, cfg.count, seed_for(cfg, tag), n);
        for (const auto& [a, b] : pairs) {
            std::complex<double> exact{0.0, 0.0};
            for (int j = 1; j <= 4; ++j) {
                exact += 0.25 * pde::conditional_cf_quadrature(planar, n, j, a, b, 1.0);
            }
            double sc = 0.0, sc2 = 0.0, ss = 0.0, ss2 = 0.0;
            for (const auto& o : set.outcomes) {
                const double phase = a * o.position[0] + b * o.position[1];
                sc += std::cos(phase);
                sc2 += std::cos(phase) * std::cos(phase);
                ss += std::sin(phase);
                ss2 += std::sin(phase) * std::sin(phase);
            }
            const double m = static_cast<double>(set.size());
            const double se_c = std::sqrt(std::max(0.0, sc2 / m - (sc / m) * (sc / m)) / m);
            const double se_s = std::sqrt(std::max(0.0, ss2 / m - (ss / m) * (ss / m)) / m);
            auto z = [](double gap, double se) { return se > 0.0 ? gap / se : (gap < 1e-12 ? 0.0 : INFINITY); };
            const std::complex<double> emp = sim::empirical_char_function(set, a, b);
            const double stat = std::max(z(std::abs(emp.real() - exact.real()), se_c),
                                         z(std::abs(emp.imag() - exact.imag()), se_s));
            out.push_back(blocking(11, {tag + "_a" + fmt(a) + "_b" + fmt(b), stat, kNaN, 3.0, stat <= 3.0, set.size()}));
        }
    }
    return out;
}

std::vector<Check> criterion_heat(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    for (int dim : {2, 3}) {
        const auto res = pde::heat_limit_check(dim, 1.0, {8.0, 16.0, 32.0}, cfg.heat_count,
                                               seed_for(cfg, "heat_d" + std::to_string(dim)));
        out.push_back(blocking(12, res.report));
    }
    return out;
}

std::vector<Check> equality_pair(const VerifyConfig& cfg, int d, int n, bool conjecture)
{
    const std::string name = std::string(conjecture ? "conjecture_support_" : "equality_") + "U" + std::to_string(d)
                           + "_vs_U" + std::to_string(d + 1) + "_n" + std::to_string(n);
    const auto a = conditioned_radii(cfg, d, n, name + "_a");
    const auto b = conditioned_radii(cfg, d + 1, n, name + "_b");
    return {{13, !conjecture, stats::ks_two_sample(name, a, b)}};
}

std::vector<Check> criterion_equalities(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    // Pair (d, d+1): even n for odd d, odd n for even d, from the first n with both laws absolutely continuous.
    for (int d = 1; d + 1 <= std::max(3, cfg.max_dim); ++d) {
        const bool conjecture = d >= 3;
        const int parity = d % 2 == 1 ? 0 : 1;
        int n = d + 1;
        if (n % 2 != parity) {
            ++n;
        }
        for (int i = 0; i < 3; ++i, n += 2) {
            auto rows = equality_pair(cfg, d, n, conjecture);
            out.insert(out.end(), rows.begin(), rows.end());
        }
    }
    return out;
}

}  // namespace

std::vector<Check> run_criterion(int criterion, const VerifyConfig& cfg)
{
    switch (criterion) {
    case 1: return criterion_boundary_mass(cfg);
    case 2: return criterion_strata(cfg);
    case 3: return criterion_uniformity(cfg);
    case 4: return criterion_conditional_laws(cfg);
    case 5: return criterion_conditional_means(cfg);
    case 6: return criterion_normalization(cfg);
    case 7: return criterion_moments(cfg);
    case 8: return criterion_representations();
    case 9: return criterion_mixture();
    case 10: return criterion_pde();
    case 11: return criterion_cf(cfg);
    case 12: return criterion_heat(cfg);
    case 13: return criterion_equalities(cfg);
    default: break;
    }
    throw DomainError("no acceptance criterion " + std::to_string(criterion));
}

std::vector<Check> run_controls(const VerifyConfig& cfg)
{
    std::vector<Check> out;
    for (int n = 1; n <= 5; ++n) {
        out.push_back(blocking(0, ks_conditional(cfg, 1, n, "telegraph_law_d1_n" + std::to_string(n))));
    }
    return out;
}

std::vector<Check> run_suite(Suite suite, const VerifyConfig& cfg)
{
    std::vector<int> criteria;
    bool controls = false;
    switch (suite) {
    case Suite::Distributions:
        criteria = {1, 2, 3, 4, 5, 6, 8, 9};
        controls = true;
        break;
    case Suite::Moments: criteria = {7}; break;
    case Suite::Pde: criteria = {10, 11}; break;
    case Suite::Limits: criteria = {12}; break;
    case Suite::Conjecture: criteria = {13}; break;
    case Suite::All:
        for (int k = 1; k <= kCriteria; ++k) {
            criteria.push_back(k);
        }
        controls = true;
        break;
    }
    std::vector<Check> out;
    if (controls) {
        out = run_controls(cfg);
    }
    for (int k : criteria) {
        auto rows = run_criterion(k, cfg);
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

bool verdict(const std::vector<Check>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.blocking || c.report.pass; });
}

std::vector<stats::TestReport> reports(const std::vector<Check>& checks)
{
    std::vector<stats::TestReport> out;
    out.reserve(checks.size());
    for (const auto& c : checks) {
        out.push_back(c.report);
    }
    return out;
}

}  // namespace cyclic::verify
