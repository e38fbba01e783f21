#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cyclic/simulation.hpp"
#include "cyclic/statistics.hpp"

using namespace cyclic;
using namespace cyclic::sim;

TEST_CASE("cycle order")
{
    CHECK(cycle_successor(Direction{1}, 2) == Direction{2});
    CHECK(cycle_successor(Direction{4}, 2) == Direction{1});
    CHECK(cycle_successor(Direction{3}, 3) == Direction{4});
    CHECK(Direction{4}.axis(3) == 0);
    CHECK(Direction{4}.sign(3) == -1.0);
    CHECK(advance(Direction{2}, -3, 2) == Direction{3});
    CHECK(advance(Direction{5}, 7, 3) == Direction{6});
}

TEST_CASE("any d consecutive directions lie on distinct axes")
{
    for (int d = 1; d <= kMaxDim; ++d) {
        for (int j = 1; j <= 2 * d; ++j) {
            std::vector<int> axes;
            Direction dir{j};
            for (int k = 0; k < d; ++k) {
                axes.push_back(dir.axis(d));
                dir = cycle_successor(dir, d);
            }
            std::sort(axes.begin(), axes.end());
            CHECK(std::adjacent_find(axes.begin(), axes.end()) == axes.end());
        }
    }
}

TEST_CASE("evolve by hand")
{
    const ModelParams planar{1.0, 1.0, 2};
    const auto o = evolve({planar, 1.0, Direction{1}, {0.3, 0.7}});
    CHECK(o.position[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(o.position[1] == doctest::Approx(0.4));
    CHECK(o.u == doctest::Approx(0.4));
    CHECK(o.stratum == Stratum::interior());
    CHECK(o.final_direction == Direction{3});
    CHECK(o.initial_direction() == Direction{1});

    const auto v = evolve({ModelParams{2.0, 1.0, 2}, 1.0, Direction{1}, {}});
    CHECK(v.position[0] == 2.0);
    CHECK(v.u == 2.0);
    CHECK(v.stratum == Stratum::vertex());

    const auto f = evolve({ModelParams{1.0, 1.0, 3}, 1.0, Direction{1}, {0.2, 0.5}});
    CHECK(f.u == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.stratum == Stratum::face(2));
}

TEST_CASE("stratum labels round-trip")
{
    for (const Stratum s : {Stratum::vertex(), Stratum::face(1), Stratum::face(7), Stratum::interior()}) {
        CHECK(Stratum::parse(s.label()) == s);
    }
    CHECK_THROWS_AS(Stratum::parse("edge"), DomainError);
}

TEST_CASE("sample_path: Poisson count and determinism")
{
    const ModelParams p{1.0, 2.0, 2};
    RngStream rng(11);
    double total = 0.0;
    const int reps = 100000;
    for (int i = 0; i < reps; ++i) {
        const auto path = sample_path(p, 3.0, rng);
        CHECK(std::is_sorted(path.switch_times.begin(), path.switch_times.end()));
        if (!path.switch_times.empty()) {
            CHECK(path.switch_times.front() > 0.0);
            CHECK(path.switch_times.back() < 3.0);
        }
        total += static_cast<double>(path.switch_times.size());
    }
    CHECK(std::abs(total / reps - 6.0) < 3.0 * std::sqrt(6.0 / reps));

    RngStream a(5), b(5);
    const auto pa = sample_path(p, 3.0, a);
    const auto pb = sample_path(p, 3.0, b);
    CHECK(pa.switch_times == pb.switch_times);
    CHECK(pa.initial_direction == pb.initial_direction);
}

TEST_CASE("sample_path_conditional: order statistics")
{
    const ModelParams p{1.0, 1.0, 2};
    RngStream rng(3);
    CHECK(sample_path_conditional(p, 2.0, 0, rng).switch_times.empty());
    CHECK_THROWS_AS(sample_path_conditional(p, 2.0, -1, rng), DomainError);

    std::vector<double> s1;
    for (int i = 0; i < 100000; ++i) {
        s1.push_back(sample_path_conditional(p, 2.0, 1, rng).switch_times[0]);
    }
    std::sort(s1.begin(), s1.end());
    CHECK(stats::ks_one_sample("s1", s1, [](double s) { return s / 2.0; }).pass);

    // (s1, s2) uniform on the simplex: 5x5 grid, diagonal cells half weight.
    const int bins = 5;
    std::vector<std::size_t> counts(bins * bins, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto path = sample_path_conditional(p, 1.0, 2, rng);
        const int a = static_cast<int>(path.switch_times[0] * bins);
        const int b = static_cast<int>(path.switch_times[1] * bins);
        ++counts[a * bins + b];
    }
    std::vector<std::size_t> observed;
    std::vector<double> expected;
    for (int a = 0; a < bins; ++a) {
        for (int b = 0; b < bins; ++b) {
            if (b < a) {
                CHECK(counts[a * bins + b] == 0);
                continue;
            }
            observed.push_back(counts[a * bins + b]);
            expected.push_back(a == b ? 1.0 : 2.0);
        }
    }
    CHECK(stats::chi_square_masses("simplex", observed, expected).pass);
}

TEST_CASE("ensemble boundary mass and vertex uniformity")
{
    const ModelParams p{1.0, 1.0, 2};
    const auto set = simulate_ensemble(p, 1.0, 100000, 42);
    const auto hits = std::count_if(set.outcomes.begin(), set.outcomes.end(),
                                    [](const MotionOutcome& o) { return o.stratum.kind != StratumKind::Interior; });
    CHECK(stats::proportion_compare("boundary", static_cast<std::size_t>(hits), set.size(), 2.0 * std::exp(-1.0)).pass);

    const auto zero = simulate_ensemble(p, 1.0, 40000, 43, 0);
    std::vector<std::size_t> per_vertex(4, 0);
    for (const auto& o : zero.outcomes) {
        CHECK(o.stratum == Stratum::vertex());
        ++per_vertex[static_cast<std::size_t>(o.final_direction.index - 1)];
    }
    CHECK(stats::chi_square_masses("vertices", per_vertex, std::vector<double>(4, 0.25)).pass);
}

TEST_CASE("strata masses in two and three dimensions")
{
    for (int dim : {2, 3}) {
        for (double lt : {0.5, 1.0, 2.0}) {
            const auto set = simulate_ensemble(ModelParams{1.0, lt, dim}, 1.0, 100000, 100 + dim);
            std::vector<std::size_t> cells(static_cast<std::size_t>(dim) + 1, 0);
            for (const auto& o : set.outcomes) {
                const std::size_t k = o.stratum.kind == StratumKind::Vertex         ? 0
                                    : o.stratum.kind == StratumKind::BoundaryFace ? o.stratum.order
                                                                                   : dim;
                ++cells[k];
            }
            double rest = 1.0;
            double term = std::exp(-lt);
            for (int k = 0; k < dim; ++k) {
                CHECK(stats::proportion_compare("stratum", cells[k], set.size(), term).pass);
                rest -= term;
                term *= lt / (k + 1);
            }
            CHECK(stats::proportion_compare("interior", cells[dim], set.size(), rest).pass);
        }
    }
}

TEST_CASE("shell law and L1 bound")
{
    for (int dim = 1; dim <= 5; ++dim) {
        const ModelParams p{1.3, 1.5, dim};
        const double t = 0.9;
        const double ct = p.c * t;
        const auto set = simulate_ensemble(p, t, 200000, 900 + dim);
        for (const auto& o : set.outcomes) {
            REQUIRE(o.u <= ct + 1e-12);
            const bool on_shell = std::abs(o.u - ct) <= 1e-12;
            REQUIRE((o.n_events < dim) == on_shell);
            REQUIRE((o.stratum.kind == StratumKind::Interior) == (o.n_events >= dim));
        }
    }
}

TEST_CASE("ensemble does not depend on the thread count")
{
    const ModelParams p{1.0, 2.0, 3};
    const auto a = simulate_ensemble(p, 1.5, 5000, 77, std::nullopt, 1);
    const auto b = simulate_ensemble(p, 1.5, 5000, 77, std::nullopt, 7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.outcomes[i].position == b.outcomes[i].position);
        CHECK(a.outcomes[i].n_events == b.outcomes[i].n_events);
        CHECK(a.outcomes[i].final_direction == b.outcomes[i].final_direction);
    }
    CHECK_THROWS_AS(simulate_ensemble(p, 1.0, 0, 1), DomainError);
    CHECK_THROWS_AS(simulate_ensemble(p, -1.0, 10, 1), DomainError);
}

TEST_CASE("empirical characteristic function")
{
    const ModelParams p{1.0, 1.0, 2};
    const auto set = simulate_ensemble(p, 1.0, 100000, 5, 0);
    CHECK(std::abs(empirical_char_function(set, 0.0, 0.0) - 1.0) < 1e-15);
    const auto cf = empirical_char_function(set, 1.0, 0.0);
    // Each draw is one of cos(+-1) and 1 with equal chance: sd of the real part is (1 - cos 1)/2.
    const double se = 0.5 * (1.0 - std::cos(1.0)) / std::sqrt(100000.0);
    CHECK(std::abs(cf.real() - 0.5 * (1.0 + std::cos(1.0))) < 3.0 * se);

    const auto solid = simulate_ensemble(p.with_dim(3), 1.0, 10, 5);
    CHECK_THROWS_AS(empirical_char_function(solid, 1.0, 0.0), DomainError);
}
