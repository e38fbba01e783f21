// cyclic: simulate the cyclic orthogonal motion, tabulate its laws, run the
// verification suites.
//
// Exit codes: 0 success, 1 bad arguments, 2 I/O error, 3 verification failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclic/analytic.hpp"
#include "cyclic/io.hpp"
#include "cyclic/simulation.hpp"
#include "cyclic/verify.hpp"

namespace {

enum Exit { kOk = 0, kBadArgs = 1, kIo = 2, kVerifyFailed = 3 };

struct ModelOptions {
    int dim = 2;
    double lambda = 1.0;
    double c = 1.0;
    double t = 1.0;

    cyclic::ModelParams params() const { return {c, lambda, dim}; }
};

void add_model_options(CLI::App* cmd, ModelOptions& m)
{
    cmd->add_option("--dim", m.dim, "space dimension d")->required();
    cmd->add_option("--lambda", m.lambda, "switching rate")->capture_default_str();
    cmd->add_option("--c", m.c, "speed")->capture_default_str();
    cmd->add_option("--t", m.t, "time horizon")->capture_default_str();
}

cyclic::io::Metadata model_meta(const std::string& command, const ModelOptions& m)
{
    using cyclic::io::format_double;
    return {{"command", command},
            {"dim", std::to_string(m.dim)},
            {"lambda", format_double(m.lambda)},
            {"c", format_double(m.c)},
            {"t", format_double(m.t)}};
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& body)
{
    if (path == "-") {
        body(std::cout);
        std::cout.flush();
        if (!std::cout) {
            throw cyclic::io::IoError("write to stdout failed");
        }
        return;
    }
    cyclic::io::write_file(path, body);
}

void check_time(double t)
{
    if (!(t > 0.0)) {
        throw cyclic::DomainError("--t must be positive");
    }
}

struct SimulateOptions {
    ModelOptions model;
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    std::optional<int> condition_n;
    unsigned threads = 0;
    std::string out;
};

int run_simulate(const SimulateOptions& o)
{
    const auto params = o.model.params();
    params.validate();
    check_time(o.model.t);
    const auto set = cyclic::sim::simulate_ensemble(params, o.model.t, o.count, o.seed, o.condition_n, o.threads);
    auto meta = model_meta("simulate", o.model);
    meta.emplace_back("count", std::to_string(o.count));
    meta.emplace_back("seed", std::to_string(o.seed));
    meta.emplace_back("condition_n", o.condition_n ? std::to_string(*o.condition_n) : "none");
    meta.emplace_back("build", std::string(cyclic::io::build_id()));
    emit(o.out, [&](std::ostream& os) { cyclic::io::write_samples(os, set, meta); });
    return kOk;
}

struct DensityOptions {
    ModelOptions model;
    int points = 101;
    std::vector<int> cond;
    std::string out;
};

int run_density(const DensityOptions& o)
{
    namespace an = cyclic::analytic;
    using cyclic::io::format_double;
    const auto params = o.model.params();
    params.validate();
    check_time(o.model.t);
    if (params.dim > 3) {
        throw cyclic::DomainError("dimension " + std::to_string(params.dim)
                                  + " is simulation-only: analytic laws exist for d <= 3");
    }
    if (o.points < 2) {
        throw cyclic::DomainError("--points must be at least 2");
    }
    for (int n : o.cond) {
        if (n < params.dim) {
            throw cyclic::SingularStratumError("--cond " + std::to_string(n)
                                               + ": N(t) < d puts the particle on the boundary, no density in u");
        }
    }

    const double t = o.model.t;
    const double ct = params.c * t;
    const bool unconditional = params.dim >= 2;

    cyclic::io::Table table;
    table.meta = model_meta("density", o.model);
    table.meta.emplace_back("points", std::to_string(o.points));
    table.meta.emplace_back("ac_mass", format_double(an::ac_mass(params.dim, params.lambda * t)));
    double vertex_total = 0.0;
    std::vector<std::pair<int, double>> faces;
    for (const auto& m : an::singular_masses(params, t)) {
        if (m.stratum.kind == cyclic::sim::StratumKind::Vertex) {
            vertex_total += m.mass;
        }
        else {
            faces.emplace_back(m.stratum.order, m.mass);
        }
    }
    table.meta.emplace_back("mass_vertex_each", format_double(vertex_total / (2 * params.dim)));
    table.meta.emplace_back("mass_vertices", format_double(vertex_total));
    for (const auto& [k, mass] : faces) {
        table.meta.emplace_back("mass_face" + std::to_string(k), format_double(mass));
    }
    if (!unconditional) {
        table.meta.emplace_back("p_unconditional", "unavailable for d=1");
    }
    table.meta.emplace_back("build", std::string(cyclic::io::build_id()));

    table.columns = {"u", "p_unconditional"};
    for (int n : o.cond) {
        table.columns.push_back("p_cond_n" + std::to_string(n));
    }
    for (int k = 0; k < o.points; ++k) {
        const double u = k == o.points - 1 ? ct : ct * k / (o.points - 1);
        std::vector<double> row{u, unconditional ? an::density_u(params, t, u) : std::nan("")};
        for (int n : o.cond) {
            row.push_back(an::conditional_density_u(params, n, t, u));
        }
        table.rows.push_back(std::move(row));
    }
    emit(o.out, [&](std::ostream& os) { cyclic::io::write_table(os, table); });
    return kOk;
}

struct VerifyOptions {
    std::string suite = "all";
    cyclic::verify::VerifyConfig cfg;
    std::string out = "-";
    bool quiet = false;
};

int run_verify(const VerifyOptions& o)
{
    const auto suite = cyclic::verify::parse_suite(o.suite);
    if (!suite) {
        throw cyclic::DomainError("unknown suite '" + o.suite + "'");
    }
    if (o.cfg.max_dim < 3 || o.cfg.max_dim > cyclic::kMaxDim) {
        throw cyclic::DomainError("--max-dim must lie in [3, " + std::to_string(cyclic::kMaxDim) + "]");
    }
    if (!(o.cfg.perturb_density > 0.0) || o.cfg.count < 10) {
        throw cyclic::DomainError("--perturb-density must be positive and --count at least 10");
    }
    const auto checks = cyclic::verify::run_suite(*suite, o.cfg);
    emit(o.out, [&](std::ostream& os) { cyclic::io::write_report(os, cyclic::verify::reports(checks)); });

    int failed = 0;
    for (const auto& c : checks) {
        const char* tag = c.report.pass ? "PASS" : (c.blocking ? "FAIL" : "WARN");
        if (!c.report.pass && c.blocking) {
            ++failed;
        }
        if (!o.quiet || (!c.report.pass && c.blocking)) {
            std::fprintf(stderr, "%s  %-48s stat=%-12.6g p=%-12.6g\n", tag, c.report.name.c_str(), c.report.statistic,
                         c.report.p_value);
        }
    }
    if (failed > 0) {
        std::fprintf(stderr, "%d blocking check(s) failed\n", failed);
        return kVerifyFailed;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cyclic orthogonal random motions: simulation, laws, verification"};
    app.require_subcommand(1);

    SimulateOptions sim_opt;
    auto* sim_cmd = app.add_subcommand("simulate", "simulate an ensemble and write one CSV row per replication");
    add_model_options(sim_cmd, sim_opt.model);
    sim_cmd->add_option("--count", sim_opt.count, "replications")->capture_default_str();
    sim_cmd->add_option("--seed", sim_opt.seed, "64-bit seed")->required();
    sim_cmd->add_option("--condition-n", sim_opt.condition_n, "condition on N(t) = n");
    sim_cmd->add_option("--threads", sim_opt.threads, "worker threads, 0 = all cores")->capture_default_str();
    sim_cmd->add_option("--out", sim_opt.out, "output CSV, - for stdout")->required();

    DensityOptions den_opt;
    auto* den_cmd = app.add_subcommand("density", "tabulate the density of U(t) on a grid of u");
    add_model_options(den_cmd, den_opt.model);
    den_cmd->add_option("--points", den_opt.points, "grid points on [0, ct]")->capture_default_str();
    den_cmd->add_option("--cond", den_opt.cond, "conditional columns for N(t) = n")->delimiter(',');
    den_cmd->add_option("--out", den_opt.out, "output CSV, - for stdout")->required();

    VerifyOptions ver_opt;
    auto* ver_cmd = app.add_subcommand("verify", "run a verification suite and write a JSON report");
    ver_cmd->add_option("--suite", ver_opt.suite, "distributions|moments|pde|limits|conjecture|all")
        ->capture_default_str();
    ver_cmd->add_option("--seed", ver_opt.cfg.seed, "64-bit seed")->required();
    ver_cmd->add_option("--count", ver_opt.cfg.count, "Monte Carlo draws per ensemble")->capture_default_str();
    ver_cmd->add_option("--heat-count", ver_opt.cfg.heat_count, "paths per speed in the heat limit")
        ->capture_default_str();
    ver_cmd->add_option("--max-dim", ver_opt.cfg.max_dim, "largest dimension in the conjecture pairs")
        ->capture_default_str();
    ver_cmd->add_option("--perturb-density", ver_opt.cfg.perturb_density, "scale tested CDFs (fault injection)")
        ->capture_default_str();
    ver_cmd->add_option("--out", ver_opt.out, "report path, - for stdout")->capture_default_str();
    ver_cmd->add_flag("--quiet", ver_opt.quiet, "only print failures");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        if (*sim_cmd) {
            return run_simulate(sim_opt);
        }
        if (*den_cmd) {
            return run_density(den_opt);
        }
        return run_verify(ver_opt);
    }
    catch (const cyclic::io::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIo;
    }
    catch (const cyclic::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadArgs;
    }
}
