// pebblab: command line front end for the pebbling laboratory.
//
// Subcommands: sample, solve, transform, stats, sweep, t-half,
// experiment {transfer|police|path}, verify.
//
// Every subcommand takes --seed; the default is the fixed constant 0, never
// wall clock time. JSON outputs embed a "manifest" object; CSV outputs get a
// sidecar <out>.manifest.json (or a leading "# manifest:" line on stdout).
// Reruns with equal manifests produce byte-identical outputs.
//
// Exit codes: 0 success, 2 usage error, 1 runtime failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pebblab/threshold.hpp"

using nlohmann::json;
using namespace pebblab;

namespace {

constexpr const char* kArtifactVersion = "1.0.0";

struct Manifest {
    std::string subcommand;
    json args = json::object();
    uint64_t seed = 0;
    std::string out; // empty means stdout

    json to_json() const {
        json paths = json::array();
        if (!out.empty()) paths.push_back(out);
        return {{"subcommand", subcommand},
                {"args", args},
                {"seed", seed},
                {"version", kArtifactVersion},
                {"output_paths", paths}};
    }
};

void write_text(const Manifest& man, const std::string& body, bool csv) {
    if (man.out.empty()) {
        if (csv) std::cout << "# manifest: " << man.to_json().dump() << "\n";
        std::cout << body;
        return;
    }
    std::ofstream f(man.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + man.out);
    f << body;
    if (csv) {
        std::ofstream side(man.out + ".manifest.json", std::ios::binary);
        side << man.to_json().dump(2) << "\n";
    }
}

void write_json(const Manifest& man, json payload) {
    payload["manifest"] = man.to_json();
    write_text(man, payload.dump(2) + "\n", false);
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    json j;
    f >> j;
    return j;
}

std::string rat(const BigRat& r) {
    std::ostringstream os;
    os << r;
    std::string s = os.str();
    if (s.find('/') == std::string::npos) s += "/1";
    return s;
}

std::vector<uint32_t> parse_u32_list(const std::string& s) {
    std::vector<uint32_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<uint32_t>(std::stoul(item)));
    if (out.empty()) throw CLI::ValidationError("expected a comma separated list");
    return out;
}

GridVertex parse_vertex(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("expected row,col");
    return {static_cast<uint32_t>(std::stoul(s.substr(0, comma))),
            static_cast<uint32_t>(std::stoul(s.substr(comma + 1)))};
}

// --- sample ----------------------------------------------------------------

int run_sample(const std::string& kind, uint32_t n, uint64_t t, uint64_t m, uint64_t N, double p,
               Manifest man) {
    if (kind == "config") {
        if (N == 0) throw CLI::ValidationError("sample config requires --N >= 1");
        auto c = sample_configuration(static_cast<uint32_t>(N), t, man.seed);
        write_json(man, c.to_json());
    } else if (kind == "rook") {
        if (n == 0) throw CLI::ValidationError("sample rook requires --n >= 1");
        RookGraph rook(n);
        auto c = sample_configuration(rook.vertex_count(), t, man.seed);
        write_json(man, rook_config_to_json(rook, c));
    } else if (kind == "gnp") {
        if (n == 0) throw CLI::ValidationError("sample gnp requires --n >= 1");
        write_json(man, multigraph_to_json(as_multigraph(sample_gnp(n, p, man.seed))));
    } else if (kind == "gnm") {
        if (n == 0) throw CLI::ValidationError("sample gnm requires --n >= 1");
        write_json(man, multigraph_to_json(as_multigraph(sample_gnm(n, m, man.seed))));
    } else { // multigraph
        if (n == 0) throw CLI::ValidationError("sample multigraph requires --n >= 1");
        write_json(man, multigraph_to_json(sample_multigraph(n, m, man.seed)));
    }
    return 0;
}

// --- solve -----------------------------------------------------------------

int run_solve(const std::string& config_path, const std::string& root_str, uint64_t budget,
              Manifest man) {
    RookGraph rook(1);
    auto config = rook_config_from_json(read_json_file(config_path), rook);
    std::optional<GridVertex> root;
    if (!root_str.empty()) root = parse_vertex(root_str);
    SolveBudget sb;
    if (budget > 0) sb.max_states = budget;
    auto verdict = solvable_tiered(rook, config, root, sb);
    write_json(man, verdict_to_json(verdict));
    return 0;
}

// --- transform -------------------------------------------------------------

int run_transform(const std::string& input_path, Manifest man) {
    json j = read_json_file(input_path);
    if (j.contains("pebbles")) {
        // rook configuration -> bipartite multigraph
        RookGraph rook(1);
        auto config = rook_config_from_json(j, rook);
        auto b = config_to_multigraph(rook, config);
        json out = multigraph_to_json(b);
        out["components"] = components_to_json(components_of(b));
        write_json(man, out);
    } else if (j.contains("edges")) {
        auto b = multigraph_from_json(j);
        RookGraph rook(b.n);
        write_json(man, rook_config_to_json(rook, multigraph_to_config(b)));
    } else {
        throw std::runtime_error("transform: input is neither a rook configuration nor a multigraph");
    }
    return 0;
}

// --- stats -----------------------------------------------------------------

int run_stats(uint64_t N, uint64_t m, Manifest man) {
    if (N == 0) throw CLI::ValidationError("stats requires --N >= 1");
    std::string body = "N,m,s,pmf,pmf_float,cumulative,cumulative_float\n";
    char buf[64];
    BigRat cumulative = 0;
    for (uint64_t s = 0; s <= std::min(N, m); ++s) {
        BigRat p = support_pmf(N, m, s);
        if (p == 0) continue;
        cumulative += p;
        std::snprintf(buf, sizeof buf, "%.6f", to_double(p));
        body += std::to_string(N) + "," + std::to_string(m) + "," + std::to_string(s) + "," +
                rat(p) + "," + buf;
        std::snprintf(buf, sizeof buf, "%.6f", to_double(cumulative));
        body += std::string(",") + rat(cumulative) + "," + buf + "\n";
    }
    body += "kind,N,m,mean,mean_float,variance,variance_float\n";
    BigRat mean = support_moment(N, m, 1);
    BigRat var = support_variance(N, m);
    char mb[64], vb[64];
    std::snprintf(mb, sizeof mb, "%.6f", to_double(mean));
    std::snprintf(vb, sizeof vb, "%.6f", to_double(var));
    body += "moments," + std::to_string(N) + "," + std::to_string(m) + "," + rat(mean) + "," + mb +
            "," + rat(var) + "," + vb + "\n";
    write_text(man, body, true);
    return 0;
}

// --- sweep and t-half ------------------------------------------------------

int run_sweep(const std::string& n_csv, const std::string& t_arg, uint64_t trials, unsigned jobs,
              Manifest man) {
    auto ns = parse_u32_list(n_csv);
    std::vector<std::vector<uint64_t>> grids;
    if (t_arg != "auto") {
        std::vector<uint64_t> grid;
        for (uint32_t t : parse_u32_list(t_arg)) grid.push_back(t);
        grids.assign(ns.size(), grid);
    }
    auto rows = sweep(ns, grids, trials, man.seed, jobs);
    write_text(man, sweep_csv(rows), true);
    return 0;
}

int run_t_half(const std::string& n_csv, uint64_t trials, unsigned jobs, Manifest man) {
    auto rep = scaling_report(parse_u32_list(n_csv), trials, man.seed, jobs);
    json rows = json::array();
    for (const auto& row : rep.rows)
        rows.push_back({{"n", row.n}, {"t_half", row.t_half}, {"ratio", row.ratio}});
    write_json(man, {{"rows", rows}, {"max_over_min_ratio", rep.max_over_min_ratio}});
    return 0;
}

// --- experiments -----------------------------------------------------------

GraphProperty make_property(const std::string& name, uint64_t threshold, uint32_t n) {
    if (name == "component")
        return {GraphProperty::Kind::LargestComponentAtLeast, threshold ? threshold : n};
    if (name == "path") return {GraphProperty::Kind::ContainsPathAtLeast, threshold ? threshold : n};
    if (name == "cop-pair") return {GraphProperty::Kind::CopPairInOneComponent, 0};
    throw CLI::ValidationError("unknown property: " + name);
}

// --- verify ----------------------------------------------------------------

int run_verify(unsigned jobs) {
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failures;
    };

    bool iso = true;
    for (uint32_t n : {2u, 3u, 5u}) iso = iso && verify_line_graph_iso(n);
    report("line graph of the complete bipartite graph matches the rook graph", iso);

    // round trips: configuration <-> multigraph and json
    bool round = true;
    RookGraph rook(4);
    for (uint64_t i = 0; i < 200 && round; ++i) {
        auto c = sample_configuration(16, i % 25, mix_seed(1, i));
        auto b = config_to_multigraph(rook, c);
        round = multigraph_to_config(b) == c && b.total_edges() == c.total() &&
                multigraph_from_json(multigraph_to_json(b)).edges == b.edges;
    }
    report("configuration/multigraph round trips", round);

    // bracketing against the exact oracle at n = 2
    bool bracket = true;
    for (uint64_t t = 1; t <= 8 && bracket; ++t) {
        double exact = to_double(exact_probability(2, t));
        auto rec = estimate_solvability(2, t, 4000, 77, jobs);
        bracket = rec.unknown_rate == 0.0 && std::abs(rec.solvable_lower - exact) < 0.05;
    }
    report("monte carlo matches the exact oracle at n=2", bracket);

    // support law consistency on a small grid
    bool law = true;
    for (uint64_t N = 1; N <= 8 && law; ++N)
        for (uint64_t m = 1; m <= 8 && law; ++m) {
            BigRat sum = 0;
            for (uint64_t s = 0; s <= std::min(N, m); ++s) sum += support_pmf(N, m, s);
            law = sum == 1 && support_moment(N, m, 1) == BigRat(BigInt(N) * m, BigInt(N) + m - 1);
        }
    report("support size law (pmf sums to 1, mean = mq)", law);

    // plan replays
    bool plans = true;
    SplitMix64 rng(5150);
    for (int done = 0; done < 200;) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(4));
        RookGraph rg(n);
        auto c = sample_configuration(rg.vertex_count(), rng.below(3 * n) + 1, rng.next());
        GridVertex root = rg.vertex(static_cast<uint32_t>(rng.below(rg.vertex_count())));
        auto plan = catch_plan(rg, c, root);
        if (!plan) continue;
        ++done;
        try {
            plans = plans && replay_plan(rg, c, *plan).counts[rg.index(root)] >= 1;
        } catch (const std::exception&) {
            plans = false;
        }
    }
    report("catch plans replay onto the root", plans);

    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pebblab: pebbling on the rook's graph and random bipartite multigraphs"};
    app.require_subcommand(1);

    uint32_t n = 0;
    uint64_t t = 0, m = 0, N = 0, trials = 1000, seed = 0, budget = 0, threshold = 0;
    unsigned jobs = 1;
    double p = 0.5, alpha = -1.0, beta = 6.0, epsilon = 0.1;
    std::string out, format = "json", kind = "config", config_path, root_str, input_path;
    std::string n_csv, t_arg = "auto", property = "component";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (default 0, never wall clock)");
        cmd->add_option("--out", out, "output path (default stdout)");
        cmd->add_option("--jobs", jobs, "worker threads");
    };

    auto* sample = app.add_subcommand("sample", "draw one random object");
    sample->add_option("--kind", kind, "config|rook|gnp|gnm|multigraph")
        ->check(CLI::IsMember({"config", "rook", "gnp", "gnm", "multigraph"}));
    sample->add_option("--n", n, "side length / part size");
    sample->add_option("--N", N, "number of slots (kind=config)");
    sample->add_option("--t", t, "pebbles (kind=config|rook)");
    sample->add_option("--m", m, "edges (kind=gnm|multigraph)");
    sample->add_option("--p", p, "edge probability (kind=gnp)");
    add_common(sample);

    auto* solve = app.add_subcommand("solve", "tiered solvability verdict for a rook configuration");
    solve->add_option("--config", config_path, "rook configuration JSON file")->required();
    solve->add_option("--root", root_str, "root as row,col (absent: all roots)");
    solve->add_option("--budget", budget, "exact solver state budget");
    solve->add_option("--n", n, "ignored, the file fixes the board size");
    add_common(solve);

    auto* transform = app.add_subcommand("transform",
                                         "rook configuration <-> bipartite multigraph");
    transform->add_option("--config,--input", input_path, "input JSON file")->required();
    add_common(transform);

    auto* stats = app.add_subcommand("stats", "exact support size law as CSV");
    stats->add_option("--N", N, "number of urns")->required();
    stats->add_option("--m", m, "number of pebbles")->required();
    add_common(stats);

    auto* sweep_cmd = app.add_subcommand("sweep", "solvability sweep over t, CSV output");
    sweep_cmd->add_option("--n", n_csv, "comma separated board sizes")->required();
    sweep_cmd->add_option("--t", t_arg, "comma separated t values or 'auto'");
    sweep_cmd->add_option("--trials", trials, "trials per (n,t)");
    add_common(sweep_cmd);

    auto* thalf = app.add_subcommand("t-half", "median threshold location and sqrt(N) collapse");
    thalf->add_option("--n", n_csv, "comma separated board sizes")->required();
    thalf->add_option("--trials", trials, "trials per estimate");
    add_common(thalf);

    auto* experiment = app.add_subcommand("experiment", "named experiments");
    experiment->require_subcommand(1);
    auto* transfer = experiment->add_subcommand("transfer", "model A/B/B' property frequencies");
    transfer->add_option("--n", n, "part size")->required();
    transfer->add_option("--m", m, "multigraph edges")->required();
    transfer->add_option("--trials", trials, "trials per model");
    transfer->add_option("--property", property, "component|path|cop-pair");
    transfer->add_option("--threshold", threshold, "property threshold (default n)");
    add_common(transfer);
    auto* police = experiment->add_subcommand("police", "police components in B'(n,m)");
    police->add_option("--n", n, "part size")->required();
    police->add_option("--m", m, "multigraph edges")->required();
    police->add_option("--trials", trials, "trials");
    police->add_option("--alpha", alpha, "large component fraction (default q/4)");
    add_common(police);
    auto* path = experiment->add_subcommand("path", "long DFS paths in A(n, beta/n)");
    path->add_option("--n", n, "part size")->required();
    path->add_option("--beta", beta, "mean degree, must exceed ln 16");
    path->add_option("--trials", trials, "trials");
    path->add_option("--epsilon", epsilon, "unused slack knob, reserved");
    add_common(path);

    auto* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Manifest man;
    man.seed = seed;
    man.out = out;

    try {
        if (sample->parsed()) {
            man.subcommand = "sample";
            man.args = {{"kind", kind}, {"n", n}, {"N", N}, {"t", t}, {"m", m}, {"p", p}};
            return run_sample(kind, n, t, m, N, p, man);
        }
        if (solve->parsed()) {
            man.subcommand = "solve";
            man.args = {{"config", config_path}, {"root", root_str}, {"budget", budget}};
            return run_solve(config_path, root_str, budget, man);
        }
        if (transform->parsed()) {
            man.subcommand = "transform";
            man.args = {{"input", input_path}};
            return run_transform(input_path, man);
        }
        if (stats->parsed()) {
            man.subcommand = "stats";
            man.args = {{"N", N}, {"m", m}};
            return run_stats(N, m, man);
        }
        if (sweep_cmd->parsed()) {
            man.subcommand = "sweep";
            man.args = {{"n", n_csv}, {"t", t_arg}, {"trials", trials}, {"jobs", jobs}};
            return run_sweep(n_csv, t_arg, trials, jobs, man);
        }
        if (thalf->parsed()) {
            man.subcommand = "t-half";
            man.args = {{"n", n_csv}, {"trials", trials}, {"jobs", jobs}};
            return run_t_half(n_csv, trials, jobs, man);
        }
        if (experiment->parsed()) {
            if (transfer->parsed()) {
                man.subcommand = "experiment transfer";
                man.args = {{"n", n},           {"m", m},
                            {"trials", trials}, {"property", property},
                            {"threshold", threshold}, {"jobs", jobs}};
                auto rep = model_transfer_experiment(n, m, make_property(property, threshold, n),
                                                     trials, seed, jobs);
                write_json(man, rep.to_json());
                return 0;
            }
            if (police->parsed()) {
                man.subcommand = "experiment police";
                man.args = {{"n", n}, {"m", m}, {"trials", trials}, {"alpha", alpha}, {"jobs", jobs}};
                std::optional<double> a;
                if (alpha >= 0) a = alpha;
                write_json(man, police_component_experiment(n, m, trials, seed, a, jobs).to_json());
                return 0;
            }
            man.subcommand = "experiment path";
            man.args = {{"n", n}, {"beta", beta}, {"trials", trials}, {"jobs", jobs}};
            write_json(man, path_experiment(n, beta, trials, seed, jobs).to_json());
            return 0;
        }
        // verify
        return run_verify(jobs == 0 ? 1 : jobs);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
