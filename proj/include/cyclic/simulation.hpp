#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclic/params.hpp"
#include "cyclic/rng.hpp"

namespace cyclic::sim {

/// One of the 2d orthogonal directions, numbered 1..2d in cycle order:
/// d_j = +e_j for j <= d and d_j = -e_{j-d} for j > d.
struct Direction {
    int index = 1;

    int axis(int dim) const { return (index - 1) % dim; }
    double sign(int dim) const { return index <= dim ? 1.0 : -1.0; }

    friend bool operator==(Direction, Direction) = default;
};

/// Next direction of the cycle, wrapping d_{2d} -> d_1.
Direction cycle_successor(Direction d, int dim);

/// Direction reached after `steps` switches (steps may be negative).
Direction advance(Direction d, long steps, int dim);

/// Starting direction plus Poisson switch times 0 < s_1 < ... < s_n < t.
struct MotionPath {
    ModelParams params;
    double horizon = 1.0;
    Direction initial_direction;
    std::vector<double> switch_times;
};

enum class StratumKind { Vertex, BoundaryFace, Interior };

/// Where the particle sits at the horizon: a vertex of the cross-polytope
/// S_ct, a boundary face of order k (reached after k < d switches, k + 1
/// axes visited), or the interior.
struct Stratum {
    StratumKind kind = StratumKind::Interior;
    int order = 0;

    static Stratum vertex() { return {StratumKind::Vertex, 0}; }
    static Stratum face(int k) { return {StratumKind::BoundaryFace, k}; }
    static Stratum interior() { return {StratumKind::Interior, 0}; }

    /// "vertex", "face1", "face2", ..., "interior".
    std::string label() const;
    static Stratum parse(const std::string& label);

    friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct MotionOutcome {
    int dim = 2;
    std::array<double, kMaxDim> position{};
    double u = 0.0;  ///< L1 radius sum |X_i|
    int n_events = 0;
    Direction final_direction;
    Stratum stratum;

    std::span<const double> coords() const { return {position.data(), static_cast<std::size_t>(dim)}; }
    Direction initial_direction() const { return advance(final_direction, -n_events, dim); }
};

/// Relative tolerance of the u = ct boundary test.
inline constexpr double kBoundaryTolerance = 1e-9;

MotionPath sample_path(const ModelParams& params, double horizon, RngStream& rng);

/// Path conditioned on N(t) = n: the switch times are n sorted uniforms.
MotionPath sample_path_conditional(const ModelParams& params, double horizon, int n, RngStream& rng);

MotionOutcome evolve(const MotionPath& path);

struct SampleSet {
    ModelParams params;
    double horizon = 1.0;
    std::optional<int> condition_n;
    std::uint64_t seed = 0;
    std::vector<MotionOutcome> outcomes;

    std::size_t size() const { return outcomes.size(); }
    std::vector<double> radii() const;
    /// Radii sorted ascending, for goodness-of-fit tests.
    std::vector<double> sorted_radii() const;
};

/// `count` independent outcomes; replication i draws from
/// RngStream::substream(seed, i), so the result does not depend on `threads`
/// (0 selects the hardware concurrency).
SampleSet simulate_ensemble(const ModelParams& params, double horizon, std::size_t count,
                            std::uint64_t seed, std::optional<int> condition_n = std::nullopt,
                            unsigned threads = 0);

/// Sample mean of exp(i alpha X + i beta Y). Planar samples only.
std::complex<double> empirical_char_function(const SampleSet& samples, double alpha, double beta);

}  // namespace cyclic::sim
