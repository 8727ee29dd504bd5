#include "rendezvous/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rendezvous/analysis.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/meeting.hpp"
#include "rendezvous/montecarlo.hpp"
#include "rendezvous/walk.hpp"
#include "report.hpp"

namespace rendezvous {

namespace {

using report::Cell;
using report::Diagnostics;
using report::Table;

constexpr const char* kRecordColumnsHelp =
    "Record columns (csv/json): method, graph, walk, value, seed, max_pairwise_discrepancy, diagnostics"
    " [, wall_time with --timing].";

// Options shared by the circle/torus/regular commands.
struct EstimateOptions {
    std::string method = "all";
    std::uint64_t trials = 10000;
    std::uint64_t max_steps = 10'000'000;
    std::string format = "table";
    unsigned threads = 1;
    bool timing = false;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("RENDEZVOUS_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
    }
    return 1;
}

void add_estimate_options(CLI::App* cmd, EstimateOptions& opt, std::uint64_t& seed, bool allow_relative) {
    const std::vector<std::string> methods = allow_relative
                                                 ? std::vector<std::string>{"spectral", "absorbing", "relative", "mc", "all"}
                                                 : std::vector<std::string>{"spectral", "absorbing", "mc", "all"};
    cmd->add_option("--method", opt.method, "Estimator")->check(CLI::IsMember(methods))->capture_default_str();
    cmd->add_option("--trials", opt.trials, "Monte Carlo trials")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--max-steps", opt.max_steps, "Monte Carlo step cap per trial")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Seed (default: $RENDEZVOUS_SEED or 1)")->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "table"}))
        ->capture_default_str();
    cmd->add_option("--threads", opt.threads, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", opt.timing, "Include wall_time columns (output is then not reproducible)");
    cmd->footer(kRecordColumnsHelp);
}

struct Record {
    Method method;
    double value;
    Diagnostics diagnostics;
    double wall_time;
};

template <class F>
Record timed(Method m, F&& compute) {
    const auto start = std::chrono::steady_clock::now();
    MeetingEstimate est = compute();
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {m, est.value, std::move(est.diagnostics), elapsed};
}

// Runs the requested estimators on g and prints one record per method.
int emit_estimates(const RegularGraph& g, const WalkSpec& w, const EstimateOptions& opt, std::uint64_t seed,
                   std::ostream& out, std::ostream& err) {
    if (!g.connected()) throw std::invalid_argument("graph is not connected");
    if (stay_probability(w, g.degree()) == 0.0) {
        err << "warning: stay probability is 0; walkers on a bipartite graph may never meet\n";
    }
    std::vector<Method> methods;
    if (opt.method == "all") {
        methods = {Method::Spectral, Method::Absorbing};
        if (g.family() != GraphFamily::General) methods.push_back(Method::Relative);
        methods.push_back(Method::MonteCarlo);
    } else {
        methods = {parse_method(opt.method)};
    }
    const bool lattice = g.family() != GraphFamily::General;

    std::vector<Record> records;
    for (Method m : methods) {
        switch (m) {
            case Method::Spectral:
                records.push_back(timed(m, [&] {
                    return lattice ? closed_form_meeting_time(g.family(), g.side(), w)
                                   : spectral_meeting_time(laplacian(transition_matrix(g, w)));
                }));
                break;
            case Method::Absorbing:
                records.push_back(timed(m, [&] { return absorbing_meeting_time(g, w); }));
                break;
            case Method::Relative:
                records.push_back(timed(m, [&] { return relative_meeting_time(relative_chain(g, w)); }));
                break;
            case Method::MonteCarlo:
                records.push_back(timed(m, [&] {
                    McConfig cfg;
                    cfg.trials = opt.trials;
                    cfg.seed = seed;
                    cfg.max_steps = opt.max_steps;
                    cfg.threads = opt.threads;
                    const McResult r = simulate_meeting(g, w, cfg);
                    if (r.truncated > 0) err << "warning: " << r.truncated << " Monte Carlo trials hit --max-steps\n";
                    MeetingEstimate est{r.mean, Method::MonteCarlo, {}};
                    est.diagnostics["half_width"] = r.half_width;
                    est.diagnostics["stddev"] = r.stddev;
                    est.diagnostics["trials"] = static_cast<double>(r.trials);
                    est.diagnostics["truncated"] = static_cast<double>(r.truncated);
                    return est;
                }));
                break;
        }
    }

    // Deterministic estimators only; the Monte Carlo spread is in its half_width.
    double discrepancy = 0.0;
    for (const auto& a : records)
        for (const auto& b : records)
            if (a.method != Method::MonteCarlo && b.method != Method::MonteCarlo)
                discrepancy = std::max(discrepancy, std::abs(a.value - b.value));

    Table table;
    table.columns = {"method", "graph", "walk", "value", "seed", "max_pairwise_discrepancy", "diagnostics"};
    if (opt.timing) table.columns.push_back("wall_time");
    for (const auto& r : records) {
        std::vector<Cell> row{to_string(r.method), g.descriptor(), describe(w), r.value, seed, discrepancy,
                              r.diagnostics};
        if (opt.timing) row.emplace_back(r.wall_time);
        table.add(std::move(row));
    }
    table.render(report::parse_format(opt.format), out);
    return kExitOk;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse '" + item + "' as a number");
        }
        if (used != item.size()) throw std::invalid_argument("cannot parse '" + item + "' as a number");
        values.push_back(v);
    }
    return values;
}

RegularGraph load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return read_graph(buf.str());
}

TorusWalk torus_walk_from(const std::string& probs) {
    if (probs.empty()) return TorusWalk{};
    const auto values = parse_list(probs);
    if (values.size() != 5) throw std::invalid_argument("--probs needs five comma-separated values");
    TorusWalk w;
    std::copy(values.begin(), values.end(), w.probs.begin());
    return w;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Expected meeting time of two independent random walks on regular graphs"};
    app.require_subcommand(1);

    const std::uint64_t seed_default = default_seed();

    // circle
    EstimateOptions circle_opt;
    std::uint64_t circle_seed = seed_default;
    std::size_t circle_n = 0;
    CircleWalk circle_walk;
    auto* circle = app.add_subcommand("circle", "Walks on the N-cycle");
    circle->add_option("--n", circle_n, "Number of nodes N >= 3")->required();
    circle->add_option("--p1", circle_walk.p_left, "Probability of moving to i-1")->capture_default_str();
    circle->add_option("--p2", circle_walk.p_right, "Probability of moving to i+1")->capture_default_str();
    circle->add_option("--p3", circle_walk.p_stay, "Probability of staying")->capture_default_str();
    add_estimate_options(circle, circle_opt, circle_seed, true);

    // torus
    EstimateOptions torus_opt;
    std::uint64_t torus_seed = seed_default;
    std::size_t torus_n = 0;
    std::string torus_probs;
    auto* torus = app.add_subcommand("torus", "Walks on the N x N torus");
    torus->add_option("--n", torus_n, "Side length N >= 3")->required();
    torus->add_option("--probs", torus_probs, "Move probabilities x-1,x+1,y-1,y+1,stay (default all 0.2)");
    add_estimate_options(torus, torus_opt, torus_seed, true);

    // regular
    EstimateOptions regular_opt;
    std::uint64_t regular_seed = seed_default;
    std::size_t regular_n = 0, regular_d = 0;
    std::string regular_file;
    auto* regular = app.add_subcommand("regular", "Simple walks on a d-regular graph");
    auto* rn = regular->add_option("--n", regular_n, "Vertex count of a random regular graph");
    auto* rd = regular->add_option("--d", regular_d, "Degree of a random regular graph");
    auto* rf = regular->add_option("--graph-file", regular_file, "Edge-list file (\"n d\" header, then \"u v\" lines)");
    rn->needs(rd);
    rd->needs(rn);
    rf->excludes(rn)->excludes(rd);
    add_estimate_options(regular, regular_opt, regular_seed, false);

    // scaling
    std::string scaling_family = "circle";
    std::vector<std::size_t> scaling_sizes;
    CircleWalk scaling_circle;
    std::string scaling_probs;
    std::string scaling_format = "csv";
    bool scaling_timing = false;
    auto* scaling = app.add_subcommand("scaling", "E[tau] / N^2 (circle) or E[tau] / (N^2 ln N) (torus) over sizes");
    scaling->add_option("--family", scaling_family)->check(CLI::IsMember({"circle", "torus"}))->capture_default_str();
    scaling->add_option("--n", scaling_sizes, "Comma-separated sizes")->delimiter(',')->required();
    scaling->add_option("--p1", scaling_circle.p_left);
    scaling->add_option("--p2", scaling_circle.p_right);
    scaling->add_option("--p3", scaling_circle.p_stay);
    scaling->add_option("--probs", scaling_probs, "Torus move probabilities");
    scaling->add_option("--format", scaling_format)->check(CLI::IsMember({"csv", "json", "table"}))->capture_default_str();
    scaling->add_flag("--timing", scaling_timing, "Include wall_time column");
    scaling->footer("Columns: N, e_tau, normalizer, ratio [, wall_time].");

    // conjecture1
    std::vector<std::size_t> c1_n, c1_d;
    std::size_t c1_graphs = 5;
    std::uint64_t c1_trials = 10000;
    std::uint64_t c1_seed = seed_default;
    std::string c1_format = "csv";
    unsigned c1_threads = 1;
    auto* c1 = app.add_subcommand("conjecture1", "Spectral vs exact vs Monte Carlo on random regular graphs");
    c1->add_option("--n", c1_n, "Comma-separated vertex counts")->delimiter(',')->required();
    c1->add_option("--d", c1_d, "Comma-separated degrees")->delimiter(',')->required();
    c1->add_option("--graphs", c1_graphs, "Graphs per (n, d) cell")->capture_default_str();
    c1->add_option("--trials", c1_trials, "Monte Carlo trials per graph (0 to skip)")->capture_default_str();
    c1->add_option("--seed", c1_seed, "Seed (default: $RENDEZVOUS_SEED or 1)");
    c1->add_option("--format", c1_format)->check(CLI::IsMember({"csv", "json", "table"}))->capture_default_str();
    c1->add_option("--threads", c1_threads)->check(CLI::PositiveNumber);
    c1->footer(
        "Columns: n, d, graph_index, graph_seed, mc_seed, spectral, exact, relative_discrepancy, mc_mean,"
        " mc_half_width, mc_z, error.");

    // conjecture2
    std::size_t c2_n = 0, c2_d = 0;
    std::uint64_t c2_seed = seed_default;
    std::string c2_file, c2_family = "regular";
    std::string c2_format = "table";
    auto* c2 = app.add_subcommand("conjecture2", "Eigenbasis property check (a)-(e) for one graph");
    c2->add_option("--family", c2_family)->check(CLI::IsMember({"regular", "circle", "torus"}))->capture_default_str();
    c2->add_option("--n", c2_n, "Vertex count (regular) or side length (circle/torus)");
    c2->add_option("--d", c2_d, "Degree (regular)");
    c2->add_option("--seed", c2_seed, "Seed for the random graph");
    c2->add_option("--graph-file", c2_file, "Edge-list file");
    c2->add_option("--format", c2_format)->check(CLI::IsMember({"csv", "json", "table"}))->capture_default_str();
    c2->footer(
        "Columns: graph, status, a, b, c, d, e, witness, eigenspace_dims, column_sums, delta_t_error,"
        " basis_meeting_time, spectral_meeting_time.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*circle) {
            validate(circle_walk);
            return emit_estimates(build_circle(circle_n), circle_walk, circle_opt, circle_seed, out, err);
        }
        if (*torus) {
            const TorusWalk w = torus_walk_from(torus_probs);
            validate(w);
            return emit_estimates(build_torus(torus_n), w, torus_opt, torus_seed, out, err);
        }
        if (*regular) {
            std::optional<RegularGraph> g;
            if (!regular_file.empty()) g = load_graph_file(regular_file);
            else if (regular_n > 0) g = random_regular(regular_n, regular_d, regular_seed);
            else throw std::invalid_argument("regular needs --n and --d, or --graph-file");
            return emit_estimates(*g, SimpleWalk{}, regular_opt, regular_seed, out, err);
        }
        if (*scaling) {
            const bool is_torus = scaling_family == "torus";
            WalkSpec w = is_torus ? WalkSpec{torus_walk_from(scaling_probs)} : WalkSpec{scaling_circle};
            validate(w);
            const auto rows = scaling_study(is_torus ? GraphFamily::Torus : GraphFamily::Circle, scaling_sizes, w);
            Table table;
            table.columns = {"N", "e_tau", "normalizer", "ratio"};
            if (scaling_timing) table.columns.push_back("wall_time");
            for (const auto& r : rows) {
                std::vector<Cell> row{static_cast<std::uint64_t>(r.n), r.e_tau, r.normalizer, r.ratio};
                if (scaling_timing) row.emplace_back(r.wall_time);
                table.add(std::move(row));
            }
            table.render(report::parse_format(scaling_format), out);
            return kExitOk;
        }
        if (*c1) {
            for (std::size_t n : c1_n)
                for (std::size_t d : c1_d)
                    if ((n * d) % 2 != 0 || d >= n || d == 0) {
                        throw std::invalid_argument("infeasible cell n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                                                    " (need n*d even and 0 < d < n)");
                    }
            const auto rows = conjecture1_experiment(c1_n, c1_d, c1_graphs, c1_trials, c1_seed, c1_threads);
            Table table;
            table.columns = {"n", "d", "graph_index", "graph_seed", "mc_seed", "spectral", "exact",
                             "relative_discrepancy", "mc_mean", "mc_half_width", "mc_z", "error"};
            for (const auto& r : rows) {
                const double z = r.mc_stderr > 0.0 ? std::abs(r.mc_mean - r.exact) / r.mc_stderr : 0.0;
                table.add({static_cast<std::uint64_t>(r.n), static_cast<std::uint64_t>(r.d),
                           static_cast<std::uint64_t>(r.graph_index), r.graph_seed, r.mc_seed, r.spectral, r.exact,
                           r.relative_discrepancy, r.mc_mean, r.mc_half_width, z, r.error});
            }
            table.render(report::parse_format(c1_format), out);
            return kExitOk;
        }
        if (*c2) {
            std::optional<RegularGraph> g;
            if (!c2_file.empty()) g = load_graph_file(c2_file);
            else if (c2_family == "circle") g = build_circle(c2_n);
            else if (c2_family == "torus") g = build_torus(c2_n);
            else if (c2_n > 0 && c2_d > 0) g = random_regular(c2_n, c2_d, c2_seed);
            else throw std::invalid_argument("conjecture2 needs --n and --d, --family circle|torus with --n, or --graph-file");
            const Conjecture2Report rep = conjecture2_check(*g);
            std::string dims, sums;
            for (std::size_t k : rep.eigenspace_dims) dims += (dims.empty() ? "" : " ") + std::to_string(k);
            for (double s : rep.column_sums) sums += (sums.empty() ? "" : " ") + report::format_double(s);
            Table table;
            table.columns = {"graph", "status", "a", "b", "c", "d", "e", "witness", "eigenspace_dims",
                             "column_sums", "delta_t_error", "basis_meeting_time", "spectral_meeting_time"};
            table.add({g->descriptor(), to_string(rep.status), rep.a, rep.b, rep.c, rep.d, rep.e, rep.witness, dims,
                       sums, rep.delta_t_inner_product_error, rep.basis_meeting_time, rep.spectral_meeting_time});
            table.render(report::parse_format(c2_format), out);
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}

}  // namespace rendezvous
