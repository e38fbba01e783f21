#include "cyclic/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace cyclic::sim {

Direction cycle_successor(Direction d, int dim)
{
    return Direction{d.index % (2 * dim) + 1};
}

Direction advance(Direction d, long steps, int dim)
{
    const long period = 2L * dim;
    long k = (d.index - 1 + steps) % period;
    if (k < 0) {
        k += period;
    }
    return Direction{static_cast<int>(k) + 1};
}

std::string Stratum::label() const
{
    switch (kind) {
    case StratumKind::Vertex: return "vertex";
    case StratumKind::BoundaryFace: return "face" + std::to_string(order);
    case StratumKind::Interior: return "interior";
    }
    return "interior";
}

Stratum Stratum::parse(const std::string& label)
{
    if (label == "vertex") {
        return vertex();
    }
    if (label == "interior") {
        return interior();
    }
    if (label.rfind("face", 0) == 0 && label.size() > 4) {
        return face(std::stoi(label.substr(4)));
    }
    throw DomainError("unknown stratum label: " + label);
}

namespace {

void check_horizon(const ModelParams& params, double horizon)
{
    params.validate();
    if (!(horizon > 0.0)) {
        throw DomainError("horizon must be positive");
    }
}

Direction uniform_direction(const ModelParams& params, RngStream& rng)
{
    return Direction{static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(params.dim))) + 1};
}

}  // namespace

MotionPath sample_path(const ModelParams& params, double horizon, RngStream& rng)
{
    check_horizon(params, horizon);
    MotionPath path{params, horizon, uniform_direction(params, rng), {}};
    double s = rng.exponential(params.lambda);
    while (s < horizon) {
        path.switch_times.push_back(s);
        s += rng.exponential(params.lambda);
    }
    return path;
}

MotionPath sample_path_conditional(const ModelParams& params, double horizon, int n, RngStream& rng)
{
    check_horizon(params, horizon);
    if (n < 0) {
        throw DomainError("conditioning count must be non-negative");
    }
    MotionPath path{params, horizon, uniform_direction(params, rng), {}};
    path.switch_times.resize(static_cast<std::size_t>(n));
    for (double& s : path.switch_times) {
        s = horizon * rng.uniform();
    }
    std::sort(path.switch_times.begin(), path.switch_times.end());
    return path;
}

MotionOutcome evolve(const MotionPath& path)
{
    const int dim = path.params.dim;
    const double c = path.params.c;
    const double t = path.horizon;

    // Time spent along each of the 2d directions.
    std::array<double, 2 * kMaxDim> dwell{};
    Direction dir = path.initial_direction;
    double last = 0.0;
    for (double s : path.switch_times) {
        dwell[dir.index - 1] += s - last;
        last = s;
        dir = cycle_successor(dir, dim);
    }
    dwell[dir.index - 1] += t - last;

    MotionOutcome out;
    out.dim = dim;
    out.n_events = static_cast<int>(path.switch_times.size());
    out.final_direction = dir;
    int nonzero = 0;
    for (int i = 0; i < dim; ++i) {
        out.position[i] = c * (dwell[i] - dwell[i + dim]);
        out.u += std::abs(out.position[i]);
        nonzero += out.position[i] != 0.0 ? 1 : 0;
    }

    const double ct = c * t;
    if (out.u >= ct * (1.0 - kBoundaryTolerance)) {
        out.stratum = nonzero <= 1 ? Stratum::vertex() : Stratum::face(nonzero - 1);
    }
    else {
        out.stratum = Stratum::interior();
    }
    return out;
}

std::vector<double> SampleSet::radii() const
{
    std::vector<double> r;
    r.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        r.push_back(o.u);
    }
    return r;
}

std::vector<double> SampleSet::sorted_radii() const
{
    auto r = radii();
    std::sort(r.begin(), r.end());
    return r;
}

SampleSet simulate_ensemble(const ModelParams& params, double horizon, std::size_t count,
                            std::uint64_t seed, std::optional<int> condition_n, unsigned threads)
{
    check_horizon(params, horizon);
    if (count < 1) {
        throw DomainError("ensemble count must be at least 1");
    }
    if (condition_n && *condition_n < 0) {
        throw DomainError("conditioning count must be non-negative");
    }

    SampleSet set{params, horizon, condition_n, seed, std::vector<MotionOutcome>(count)};

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream rng = RngStream::substream(seed, i);
            const MotionPath path = condition_n
                                        ? sample_path_conditional(params, horizon, *condition_n, rng)
                                        : sample_path(params, horizon, rng);
            set.outcomes[i] = evolve(path);
        }
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        run_range(0, count);
        return set;
    }

    {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (count + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            if (begin < end) {
                workers.emplace_back(run_range, begin, end);
            }
        }
    }
    return set;
}

std::complex<double> empirical_char_function(const SampleSet& samples, double alpha, double beta)
{
    if (samples.params.dim != 2) {
        throw DomainError("characteristic function needs planar samples");
    }
    if (samples.outcomes.empty()) {
        throw DomainError("empty sample set");
    }
    std::complex<double> sum{0.0, 0.0};
    for (const auto& o : samples.outcomes) {
        sum += std::polar(1.0, alpha * o.position[0] + beta * o.position[1]);
    }
    return sum / static_cast<double>(samples.outcomes.size());
}

}  // namespace cyclic::sim
