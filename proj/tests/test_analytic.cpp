#include <doctest.h>

#include <cmath>
#include <vector>

#include "cyclic/analytic.hpp"
#include "cyclic/quadrature.hpp"

using namespace cyclic;
using namespace cyclic::analytic;

namespace {

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

const ModelParams kPlanar{1.0, 1.0, 2};
const ModelParams kSolid{1.0, 1.0, 3};

}  // namespace

TEST_CASE("unconditional density reference values")
{
    CHECK(rel(density_u(kPlanar, 1.0, 0.0), 0.257849192) < 1e-8);
    CHECK(rel(density_u(kSolid, 1.0, 0.0), 0.058094085) < 1e-8);
    CHECK(rel(density_u(ModelParams{1.5, 2.0, 2}, 0.7, 0.0), 0.385888539) < 1e-8);
    CHECK(rel(density_u(ModelParams{1.5, 2.0, 3}, 0.7, 0.0), 0.115759732) < 1e-8);

    // At u = ct two series terms survive: (lambda/c) e^{-lambda t} (lambda t / 2 + (lambda t)^2 / 4).
    const double lt = 1.0;
    CHECK(rel(density_u(kPlanar, 1.0, 1.0), std::exp(-lt) * (lt / 2 + lt * lt / 4)) < 1e-14);

    CHECK(density_u(kPlanar, 1.0, 1.5) == 0.0);
    CHECK(density_u(kPlanar, 1.0, -0.1) == 0.0);
    CHECK_THROWS_AS(density_u(kPlanar, 0.0, 0.1), DomainError);
    CHECK_THROWS_AS(density_u(kPlanar.with_dim(4), 1.0, 0.1), DomainError);
}

TEST_CASE("density stays finite for large lambda t")
{
    const ModelParams fast{1.0, 800.0, 2};
    const double v = density_u(fast, 1.0, 0.3);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    std::vector<double> u{0.1, 0.3, 0.9};
    std::vector<double> out(3);
    density_u_batch(fast, 1.0, u, out);
    CHECK(rel(out[1], v) < 1e-14);
}

TEST_CASE("representations agree on the open support")
{
    for (const auto& [c, l, t] : {std::tuple{1.0, 1.0, 1.0}, std::tuple{1.5, 2.0, 0.7}, std::tuple{0.5, 6.0, 2.0}}) {
        const ModelParams p2{c, l, 2};
        const ModelParams p3{c, l, 3};
        const double ct = c * t;
        for (int k = 0; k < 200; ++k) {
            const double u = ct * (k + 0.5) / 200.0;
            const double s2 = density_u(p2, t, u);
            CHECK(rel(density_u_closed_form(p2, t, u), s2) < 1e-9);
            CHECK(rel(density_u_coefficients(p2, t, u), s2) < 1e-9);
            CHECK(rel(density_u_coefficients(p3, t, u), density_u(p3, t, u)) < 1e-9);
        }
    }
    CHECK_THROWS_AS(density_u_closed_form(kPlanar, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(density_u_closed_form(kSolid, 1.0, 0.5), DomainError);
    // Approaching the edge the closed form tends to the series value there.
    CHECK(rel(density_u_closed_form(kPlanar, 1.0, 1.0 - 1e-6), density_u(kPlanar, 1.0, 1.0)) < 1e-5);
}

TEST_CASE("coefficients")
{
    const auto c2 = density_coefficients(ModelParams{1.0, 2.0, 2});
    REQUIRE(c2.coeffs.size() == 3);
    CHECK(c2.coeffs[0] == -2.0);
    CHECK(c2.coeffs[1] == 1.0);
    CHECK(c2.coeffs[2] == 1.0);
    const auto c3 = density_coefficients(ModelParams{1.0, 2.0, 3});
    REQUIRE(c3.coeffs.size() == 4);
    CHECK(c3.coeffs[1] == -3.0);
    CHECK(c3.coeffs[3] == 1.0);
}

TEST_CASE("non-negativity on a fine grid")
{
    for (int dim : {2, 3}) {
        for (double l : {0.1, 1.0, 10.0, 200.0}) {
            const ModelParams p{1.0, l, dim};
            for (int k = 0; k <= 1000; ++k) {
                CHECK(density_u(p, 1.0, k / 1000.0) >= 0.0);
            }
        }
    }
}

TEST_CASE("normalization of the absolutely continuous part")
{
    for (int dim : {2, 3}) {
        for (double lt : {0.5, 1.0, 2.0, 5.0}) {
            const ModelParams p{2.0, lt / 1.5, dim};
            const double integral = cdf_u(p, 1.5, 3.0);
            CHECK(std::abs(integral - ac_mass(dim, lt)) < 1e-8);
        }
    }
    CHECK(rel(ac_mass(2, 1.0), 1.0 - 2.0 * std::exp(-1.0)) < 1e-14);
    CHECK(rel(ac_mass(3, 1.0), 1.0 - 2.5 * std::exp(-1.0)) < 1e-14);
    CHECK(ac_mass(3, 1e-12) < 1e-30);
}

TEST_CASE("cdf examples")
{
    CHECK(cdf_u(kPlanar, 1.0, 0.0) == 0.0);
    CHECK(rel(cdf_u(kPlanar, 1.0, 1.0), 0.264241118) < 1e-8);
    CHECK(rel(conditional_cdf_u(kPlanar, 2, 1.0, 0.5), 0.5) < 1e-12);
    double last = 0.0;
    for (int k = 1; k <= 50; ++k) {
        const double f = cdf_u(kSolid, 1.0, k / 50.0);
        CHECK(f >= last);
        last = f;
    }
}

TEST_CASE("conditional density examples")
{
    CHECK(rel(conditional_density_u(ModelParams{2.0, 1.0, 2}, 2, 3.0, 2.5), 1.0 / 6.0) < 1e-14);
    CHECK(rel(conditional_density_u(kSolid, 4, 1.0, 0.0), 0.5) < 1e-14);
    CHECK(conditional_density_u(kSolid, 5, 1.0, 1.0) == 0.0);
    CHECK(rel(conditional_density_u(kPlanar.with_dim(1), 2, 1.0, 0.0), 1.0) < 1e-14);
    CHECK(conditional_density_u(kPlanar, 3, 1.0, 1.2) == 0.0);
    CHECK_THROWS_AS(conditional_density_u(kPlanar, 1, 1.0, 0.5), SingularStratumError);
    CHECK_THROWS_AS(conditional_density_u(kSolid, 2, 1.0, 0.5), SingularStratumError);
    CHECK_THROWS_AS(conditional_density_u(kSolid.with_dim(4), 6, 1.0, 0.5), DomainError);
}

TEST_CASE("conditional laws integrate to one")
{
    for (int dim = 1; dim <= 3; ++dim) {
        for (int n = dim; n <= 12; ++n) {
            const ModelParams p{1.3, 1.0, dim};
            CAPTURE(dim);
            CAPTURE(n);
            CHECK(std::abs(conditional_cdf_u(p, n, 0.8, 1.3 * 0.8) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("even laws coincide for d = 1, 2 and odd laws for d = 2, 3")
{
    for (int k = 0; k <= 1000; ++k) {
        const double u = k / 1000.0;
        for (int n = 2; n <= 12; n += 2) {
            CHECK(conditional_density_u(kPlanar.with_dim(1), n, 1.0, u) == conditional_density_u(kPlanar, n, 1.0, u));
        }
        for (int n = 3; n <= 13; n += 2) {
            CHECK(conditional_density_u(kPlanar, n, 1.0, u) == conditional_density_u(kSolid, n, 1.0, u));
        }
    }
}

TEST_CASE("Poisson mixture of conditional laws gives the unconditional density")
{
    for (int dim : {2, 3}) {
        for (double lt : {0.5, 1.0, 2.0}) {
            const ModelParams p{1.0, lt, dim};
            for (int k = 0; k < 40; ++k) {
                const double u = (k + 0.5) / 40.0;
                double mix = 0.0;
                for (int n = dim; n <= 60; ++n) {
                    mix += poisson_pmf(n, lt) * conditional_density_u(p, n, 1.0, u);
                }
                CHECK(std::abs(mix - density_u(p, 1.0, u)) < 1e-8);
            }
        }
    }
}

TEST_CASE("singular masses")
{
    const auto m2 = singular_masses(kPlanar, 1.0);
    double vertices = 0.0;
    double edges = 0.0;
    for (const auto& m : m2) {
        (m.stratum.kind == sim::StratumKind::Vertex ? vertices : edges) += m.mass;
    }
    CHECK(rel(vertices, std::exp(-1.0)) < 1e-14);
    CHECK(rel(edges, std::exp(-1.0)) < 1e-14);

    const auto m3 = singular_masses(kSolid, 1.0);
    REQUIRE(m3.size() == 8);
    CHECK(rel(m3[0].mass, std::exp(-1.0) / 6.0) < 1e-14);
    CHECK(rel(m3.back().mass, std::exp(-1.0) / 2.0) < 1e-14);

    const auto tiny = singular_masses(kSolid, 1e-9);
    double total = 0.0;
    for (const auto& m : tiny) {
        total += m.stratum.kind == sim::StratumKind::Vertex ? m.mass : 0.0;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

    for (int dim = 1; dim <= 3; ++dim) {
        const ModelParams p{1.0, 1.7, dim};
        double sum = ac_mass(dim, 1.7);
        for (const auto& m : singular_masses(p, 1.0)) {
            sum += m.mass;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("planar mean and moments")
{
    CHECK(rel(mean_u(kPlanar, 1.0), 0.869430356) < 1e-9);
    CHECK(rel(mean_u(ModelParams{1.5, 2.0, 2}, 0.7), 0.836346940) < 1e-9);
    CHECK(moment_u(kPlanar, 0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rel(moment_u(kPlanar, 1, 1.0), mean_u(kPlanar, 1.0)) < 1e-15);
    CHECK(rel(moment_u(kPlanar, 2, 1.0), 0.825479310) < 1e-9);
    CHECK(rel(moment_u(kPlanar, 3, 1.0), 0.803346722) < 1e-9);
    CHECK(rel(moment_u(kPlanar, 4, 1.0), 0.789996644) < 1e-9);
    // Small times: U is ct up to O(t^2).
    const double t = 1e-4;
    CHECK(rel(mean_u(kPlanar, t) / t, 1.0) < 1e-7);
    CHECK(std::isfinite(mean_u(ModelParams{1.0, 900.0, 2}, 1.0)));
    CHECK_THROWS_AS(mean_u(kSolid, 1.0), DomainError);
    CHECK_THROWS_AS(moment_u(kPlanar, -1, 1.0), DomainError);
}

TEST_CASE("moments against quadrature plus the boundary contribution")
{
    for (const auto& [p, t] : {std::pair{kPlanar, 1.0}, std::pair{ModelParams{1.5, 2.0, 2}, 0.7},
                               std::pair{ModelParams{0.8, 5.0, 2}, 1.2}}) {
        const double ct = p.c * t;
        const double lt = p.lambda * t;
        for (int m = 0; m <= 6; ++m) {
            const double q = quad::integrate([&](double u) { return std::pow(u, m) * density_u(p, t, u); }, 0.0, ct,
                                             {ct * (1 - 1e-6)}, 1e-14);
            const double oracle = q + std::pow(ct, m) * std::exp(-lt) * (1 + lt);
            CHECK(rel(moment_u(p, m, t), oracle) < 1e-8);
        }
    }
}

TEST_CASE("three-dimensional conditional means")
{
    CHECK(conditional_mean_u(3) == doctest::Approx(9.0 / 16.0).epsilon(1e-15));
    CHECK(conditional_mean_u(4) == doctest::Approx(5.0 / 8.0).epsilon(1e-15));
    CHECK(conditional_mean_u(5) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
    const double table[] = {0.5625, 0.625, 5.0 / 12.0, 0.46875, 0.341796875, 0.3828125, 0.2953125, 0.328125,
                            0.26318359375, 0.2900390625};
    for (int n = 3; n <= 12; ++n) {
        CHECK(rel(conditional_mean_u(n), table[n - 3]) < 1e-14);
        CHECK(rel(conditional_mean_catalan(n), conditional_mean_u(n)) < 1e-14);
        const double q = quad::integrate([&](double u) { return u * conditional_density_u(kSolid, n, 1.0, u); }, 0.0,
                                         1.0, 1e-14);
        CHECK(std::abs(q - conditional_mean_u(n)) < 1e-10);
    }
    for (int k = 1; k <= 8; ++k) {
        CHECK(rel(conditional_mean_ratio(k), conditional_mean_u(2 * k + 1) / conditional_mean_u(2 * k + 2)) < 1e-13);
    }
    CHECK_THROWS_AS(conditional_mean_u(2), SingularStratumError);
    CHECK_THROWS_AS(conditional_mean_ratio(0), DomainError);
}

TEST_CASE("Catalan numbers")
{
    const double expect[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int k = 0; k < 9; ++k) {
        CHECK(catalan(k) == expect[k]);
    }
    CHECK_THROWS_AS(catalan(-1), DomainError);
}

TEST_CASE("poisson_pmf")
{
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(3, 0.0) == 0.0);
    CHECK(poisson_pmf(-1, 1.0) == 0.0);
    CHECK(rel(poisson_pmf(2, 2.0), 2.0 * std::exp(-2.0)) < 1e-14);
    double sum = 0.0;
    for (int n = 0; n < 200; ++n) {
        sum += poisson_pmf(n, 40.0);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
}
