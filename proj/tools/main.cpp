#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trifree/derand.hpp"
#include "trifree/graph.hpp"
#include "trifree/hardness.hpp"
#include "trifree/oracles.hpp"
#include "trifree/params.hpp"
#include "trifree/random.hpp"
#include "trifree/rounding.hpp"
#include "trifree/sdp.hpp"
#include "trifree/threecolor.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace trifree;

// Hyperplane seed streams, one counter block per scheme, so adding a
// scheme never perturbs another's draws.
constexpr std::uint64_t gw_stream = 100;
constexpr std::uint64_t hybrid_stream = 200;

void emit(const json& doc, bool compact) {
    std::cout << (compact ? doc.dump() : doc.dump(2)) << "\n";
}

void put_graph_fields(json& j, const Multigraph& g) {
    j["n"] = g.vertex_count();
    j["support"] = g.support_size();
    j["total_weight"] = g.total_weight();
}

json edge_array(const Multigraph& g, const EdgeSelection& s) {
    json arr = json::array();
    const std::vector<Edge>& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (s.contains(i)) arr.push_back({edges[i].u, edges[i].v, edges[i].mult});
    return arr;
}

json edge_list(const std::vector<Edge>& edges) {
    json arr = json::array();
    for (const Edge& e : edges) arr.push_back({e.u, e.v, e.mult});
    return arr;
}

const char* case_name(RoundingCase c) {
    switch (c) {
        case RoundingCase::gw_cut: return "gw_cut";
        case RoundingCase::long_edge: return "long_edge";
        case RoundingCase::derandomised: return "derandomised";
    }
    return "unknown";
}

struct SolveOpts {
    std::string file;
    double eps = 1e-4;
    std::uint64_t seed = 1;
    std::string embedding_out;
};

int cmd_solve(const SolveOpts& o, bool compact) {
    const Multigraph g = parse_graph_file(o.file);
    const auto [emb, report] = solve_maxcut_sdp(g, o.eps, o.seed);
    if (!o.embedding_out.empty()) {
        std::ofstream out(o.embedding_out);
        if (!out) throw std::runtime_error("cannot open " + o.embedding_out);
        out << serialise_embedding(emb);
    }
    json j;
    j["schema"] = 1;
    j["file"] = o.file;
    j["seed"] = o.seed;
    j["eps"] = o.eps;
    put_graph_fields(j, g);
    j["rank"] = emb.rank;
    j["objective"] = report.objective;
    j["iterations"] = report.iterations;
    j["restarts"] = report.restarts;
    j["tolerance"] = report.tolerance;
    j["converged"] = report.converged;
    emit(j, compact);
    if (!report.converged) {
        std::cerr << "solve: SDP did not converge\n";
        return 3;
    }
    return 0;
}

struct RoundOpts {
    std::string file;
    std::string scheme = "hybrid";
    double eps = 1e-4;
    std::uint64_t seed = 1;
    int tries = 1;
    int grid_n = default_grid_flips;
    std::int64_t budget = default_atom_budget;
};

RoundingOutcome run_scheme(const Multigraph& g, const Embedding& emb,
                           const RoundingParams& params, const std::string& scheme,
                           std::uint64_t seed, int tries, int grid_n, std::int64_t budget) {
    if (scheme == "derand") {
        DerandConfig cfg;
        cfg.n_flips = grid_n;
        cfg.atom_budget = budget;
        return derandomised_round(g, emb, params, cfg);
    }
    RoundingOutcome best;
    bool have = false;
    for (int i = 0; i < tries; ++i) {
        RoundingOutcome out =
            scheme == "gw"
                ? round_gw(g, emb, sample_hyperplane(emb.rank, derive_seed(seed, gw_stream + i)))
                : round_hybrid(g, emb, params, derive_seed(seed, hybrid_stream + i));
        if (!have || out.weight > best.weight) {
            best = std::move(out);
            have = true;
        }
    }
    return best;
}

int cmd_round(const RoundOpts& o, bool compact) {
    const Multigraph g = parse_graph_file(o.file);
    const auto [emb, report] = solve_maxcut_sdp(g, o.eps, o.seed);
    if (!report.converged) {
        std::cerr << "round: SDP did not converge\n";
        return 3;
    }
    const RoundingParams params = hybrid_params();
    const RoundingOutcome out =
        run_scheme(g, emb, params, o.scheme, o.seed, o.tries, o.grid_n, o.budget);
    json j;
    j["schema"] = 1;
    j["file"] = o.file;
    j["scheme"] = o.scheme;
    j["seed"] = o.seed;
    j["tries"] = o.tries;
    put_graph_fields(j, g);
    j["sdp_objective"] = report.objective;
    j["weight"] = out.weight;
    j["ratio_vs_sdp"] =
        report.objective > 0 ? json(static_cast<double>(out.weight) / report.objective) : json();
    j["case_used"] = case_name(out.case_used);
    j["edge_count"] = out.selection.count();
    j["edges"] = edge_array(g, out.selection);
    emit(j, compact);
    return 0;
}

struct Color3Opts {
    std::string file;
    std::string mode = "restarts";
    std::uint64_t seed = 1;
    long long budget = 0;
    int grid_n = 0;
};

int cmd_color3(const Color3Opts& o, bool compact) {
    const Multigraph g = parse_graph_file(o.file);
    const ThreeColourMode mode =
        o.mode == "derand" ? ThreeColourMode::derandomised : ThreeColourMode::restarts;
    const ThreeColourResult res = solve_k2_k3(g, mode, o.budget, o.seed, o.grid_n);
    json j;
    j["schema"] = 1;
    j["file"] = o.file;
    j["mode"] = o.mode;
    j["seed"] = o.seed;
    j["budget"] = o.budget;
    put_graph_fields(j, g);
    j["sdp_bound"] = res.sdp_bound;
    j["satisfied_weight"] = res.satisfied_weight;
    j["certified"] = res.certified;
    j["restarts_used"] = res.restarts_used;
    j["colours"] = res.colouring.colour;
    emit(j, compact);
    return 0;
}

struct GadgetOpts {
    int which = 9;
    bool verify = false;
};

int cmd_gadget(const GadgetOpts& o, bool compact) {
    if (o.which != 9 && o.which != 17)
        throw std::invalid_argument("--which must be 9 or 17");
    const Gadget gad = o.which == 9 ? gadget9() : gadget17();
    json j;
    j["schema"] = 1;
    j["which"] = o.which;
    j["performance"] = gad.performance;
    j["parity"] = gad.parity;
    j["terminals"] = {{"zero", gad.zero}, {"x", gad.x}, {"y", gad.y}, {"z", gad.z}};
    put_graph_fields(j, gad.graph);
    j["graph"] = serialise_graph(gad.graph);
    bool ok = true;
    if (o.verify) {
        const GadgetVerification v = verify_gadget(gad);
        ok = v.ok();
        j["verification"] = {{"ok", v.ok()},
                             {"assignments_covered", v.assignments_covered},
                             {"weight_bound", v.weight_bound},
                             {"near_optimal_structure", v.near_optimal_structure},
                             {"best_triangle_free", v.best_triangle_free},
                             {"failures", v.failures}};
    }
    emit(j, compact);
    if (!ok) {
        std::cerr << "gadget: verification failed\n";
        return 3;
    }
    return 0;
}

struct ReduceOpts {
    std::string file;
};

int cmd_reduce(const ReduceOpts& o, bool compact) {
    const E3LinSystem sys = parse_e3lin_file(o.file);
    const ReducedInstance inst = reduce_to_maxpcsp(sys, gadget17(), gadget9());
    json j;
    j["schema"] = 1;
    j["file"] = o.file;
    j["num_vars"] = sys.num_vars;
    j["equations"] = sys.equations.size();
    put_graph_fields(j, inst.graph);
    j["zero_vertex"] = inst.zero_vertex;
    j["var_vertex"] = inst.var_vertex;
    j["graph"] = serialise_graph(inst.graph);
    json blocks = json::array();
    for (const GadgetBlock& b : inst.blocks)
        blocks.push_back(
            {{"equation", b.equation}, {"parity", b.parity}, {"edges", edge_list(b.edges)}});
    j["blocks"] = blocks;
    emit(j, compact);
    return 0;
}

struct OracleOpts {
    std::string file;
};

/// Tag of the first non-comment line decides the input format.
char detect_format(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        return line[pos];
    }
    return '\0';
}

int cmd_oracle(const OracleOpts& o, bool compact) {
    const char tag = detect_format(o.file);
    json j;
    j["schema"] = 1;
    j["file"] = o.file;
    json skipped = json::object();
    if (tag == 'p') {
        const Multigraph g = parse_graph_file(o.file);
        j["input"] = "graph";
        put_graph_fields(j, g);
        try {
            const auto [w, cut] = brute_max_cut(g);
            j["max_cut"] = {{"weight", w}, {"side", cut.side}};
        } catch (const std::invalid_argument& e) {
            j["max_cut"] = nullptr;
            skipped["max_cut"] = e.what();
        }
        try {
            const auto [w, sel] = brute_max_triangle_free(g);
            j["max_triangle_free"] = {{"weight", w}, {"edges", edge_array(g, sel)}};
        } catch (const std::invalid_argument& e) {
            j["max_triangle_free"] = nullptr;
            skipped["max_triangle_free"] = e.what();
        }
        try {
            const auto [w, col] = brute_best_3colouring(g);
            j["best_3colouring"] = {{"weight", w}, {"colours", col.colour}};
        } catch (const std::invalid_argument& e) {
            j["best_3colouring"] = nullptr;
            skipped["best_3colouring"] = e.what();
        }
    } else if (tag == 'l') {
        const E3LinSystem sys = parse_e3lin_file(o.file);
        j["input"] = "e3lin";
        j["num_vars"] = sys.num_vars;
        j["equations"] = sys.equations.size();
        try {
            const E3LinOptimum plain = brute_e3lin(sys, false);
            j["optimum"] = {{"satisfied", plain.satisfied}, {"assignment", plain.assignment}};
            const E3LinOptimum balanced = brute_e3lin(sys, true);
            if (balanced.exists)
                j["balanced_optimum"] = {{"exists", true},
                                         {"satisfied", balanced.satisfied},
                                         {"assignment", balanced.assignment}};
            else
                j["balanced_optimum"] = {{"exists", false}};
        } catch (const std::invalid_argument& e) {
            j["optimum"] = nullptr;
            j["balanced_optimum"] = nullptr;
            skipped["optimum"] = e.what();
        }
    } else {
        throw std::invalid_argument(o.file + ": unrecognised input format");
    }
    j["skipped"] = skipped;
    emit(j, compact);
    return 0;
}

struct VerifyParamsOpts {
    int grid_n = 10'000;
};

int cmd_verify_params(const VerifyParamsOpts& o, bool compact) {
    const auto [alpha_gw, tau_gw] = gw_constants();
    const RoundingParams params = hybrid_params();
    const auto [tau_star, alpha_star] = optimize_tau(1e-6);
    const ConstraintReport report = verify_constraints(params, o.grid_n);
    bool ok = report.violations.empty();
    for (const ConstraintMargin& band : report.bands)
        if (band.min_margin < -1e-9) ok = false;
    json j;
    j["schema"] = 1;
    j["constants"] = {{"alpha_gw", alpha_gw}, {"tau_gw", tau_gw},
                      {"alpha", params.alpha},  {"tau", params.tau},
                      {"p_case1", params.p_case1}, {"q_case2", params.q_case2},
                      {"tau_star", tau_star}, {"alpha_star", alpha_star}};
    j["grid_points"] = report.grid_points;
    json bands = json::array();
    for (const ConstraintMargin& band : report.bands)
        bands.push_back({{"min_margin", band.min_margin}, {"argmin_angle", band.argmin_angle}});
    j["bands"] = bands;
    j["violations"] = report.violations;
    j["ok"] = ok;
    emit(j, compact);
    if (!ok) {
        std::cerr << "verify-params: constraint margins negative\n";
        return 3;
    }
    return 0;
}

struct BenchOpts {
    std::string dir;
    std::vector<std::string> schemes;
    int seeds = 5;
    std::uint64_t seed = 1;
    double eps = 1e-4;
    int grid_n = default_grid_flips;
    std::int64_t budget = default_atom_budget;
    int threads = 0;
};

struct BenchSlot {
    bool failed = false;
    std::string error;
    json instance;
    std::vector<std::pair<std::string, double>> ratios;
};

double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

BenchSlot bench_instance(const std::filesystem::path& path, const BenchOpts& o,
                         const RoundingParams& params) {
    BenchSlot slot;
    try {
        const Multigraph g = parse_graph_file(path.string());
        const auto [emb, report] = solve_maxcut_sdp(g, o.eps, o.seed);
        if (!report.converged) throw std::runtime_error("SDP did not converge");

        json inst;
        inst["file"] = path.filename().string();
        put_graph_fields(inst, g);
        inst["sdp_objective"] = report.objective;
        double denom = report.objective;
        if (g.vertex_count() <= 24) {
            const std::int64_t brute = brute_max_cut(g).first;
            inst["denominator"] = "brute_max_cut";
            inst["denominator_value"] = brute;
            denom = static_cast<double>(brute);
        } else {
            inst["denominator"] = "sdp_objective";
            inst["denominator_value"] = report.objective;
        }
        json results = json::object();
        for (const std::string& scheme : o.schemes) {
            try {
                const RoundingOutcome out = run_scheme(g, emb, params, scheme, o.seed,
                                                       o.seeds, o.grid_n, o.budget);
                json r;
                r["weight"] = out.weight;
                if (denom > 0) {
                    const double ratio = static_cast<double>(out.weight) / denom;
                    r["ratio"] = ratio;
                    slot.ratios.emplace_back(scheme, ratio);
                } else {
                    r["ratio"] = nullptr;
                }
                results[scheme] = r;
            } catch (const std::exception& e) {
                results[scheme] = {{"error", e.what()}};
            }
        }
        inst["results"] = results;
        slot.instance = std::move(inst);
    } catch (const std::exception& e) {
        slot.failed = true;
        slot.error = e.what();
    }
    return slot;
}

int cmd_bench(BenchOpts& o, bool compact) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(o.dir))
        throw std::invalid_argument(o.dir + ": not a directory");
    if (o.schemes.empty()) o.schemes = {"gw", "hybrid", "derand"};
    std::vector<std::string> schemes;
    for (const std::string& s : o.schemes) {
        if (s != "gw" && s != "hybrid" && s != "derand")
            throw std::invalid_argument("unknown scheme " + s);
        if (std::find(schemes.begin(), schemes.end(), s) == schemes.end()) schemes.push_back(s);
    }
    o.schemes = schemes;

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(o.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".graph")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    const RoundingParams params = hybrid_params();
    std::vector<BenchSlot> slots(files.size());
    const unsigned workers = o.threads > 0
                                 ? static_cast<unsigned>(o.threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(workers, files.size()); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1))
                slots[i] = bench_instance(files[i], o, params);
        });
    for (std::thread& t : pool) t.join();

    json j;
    j["schema"] = 1;
    j["dir"] = o.dir;
    j["schemes"] = o.schemes;
    j["seeds"] = o.seeds;
    j["seed"] = o.seed;
    json instances = json::array();
    json failures = json::array();
    std::map<std::string, std::vector<double>> by_scheme;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].failed) {
            failures.push_back(
                {{"file", files[i].filename().string()}, {"error", slots[i].error}});
            continue;
        }
        instances.push_back(slots[i].instance);
        for (const auto& [scheme, ratio] : slots[i].ratios) by_scheme[scheme].push_back(ratio);
    }
    j["instances"] = instances;
    json summary = json::object();
    for (const std::string& scheme : o.schemes) {
        std::vector<double>& ratios = by_scheme[scheme];
        std::sort(ratios.begin(), ratios.end());
        json s;
        s["count"] = ratios.size();
        if (!ratios.empty()) {
            s["min"] = ratios.front();
            s["p25"] = quantile(ratios, 0.25);
            s["median"] = quantile(ratios, 0.5);
            s["p75"] = quantile(ratios, 0.75);
            s["max"] = ratios.back();
        }
        summary[scheme] = s;
    }
    j["summary"] = summary;
    j["failures"] = failures;
    emit(j, compact);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-Cut SDP rounding and triangle-free subgraph toolkit", "trifree"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "trifree 1.0.0");
    bool compact = false;

    SolveOpts solve_opts;
    CLI::App* solve = app.add_subcommand("solve", "Solve the Max-Cut SDP relaxation");
    solve->add_option("file", solve_opts.file, "graph file")->required();
    solve->add_option("--eps", solve_opts.eps, "relative convergence tolerance");
    solve->add_option("--seed", solve_opts.seed, "RNG seed");
    solve->add_option("--embedding-out", solve_opts.embedding_out, "write the embedding here");
    solve->add_flag("--json", compact, "compact single-line JSON");

    RoundOpts round_opts;
    CLI::App* round = app.add_subcommand("round", "Round an SDP solution to a triangle-free subgraph");
    round->add_option("file", round_opts.file, "graph file")->required();
    round->add_option("--scheme", round_opts.scheme, "gw | hybrid | derand")
        ->check(CLI::IsMember({"gw", "hybrid", "derand"}));
    round->add_option("--eps", round_opts.eps, "SDP tolerance");
    round->add_option("--seed", round_opts.seed, "RNG seed");
    round->add_option("--tries", round_opts.tries, "independent draws, best kept")
        ->check(CLI::PositiveNumber);
    round->add_option("--grid-n", round_opts.grid_n, "derandomiser grid flips");
    round->add_option("--budget", round_opts.budget, "derandomiser atom budget");
    round->add_flag("--json", compact, "compact single-line JSON");

    Color3Opts color3_opts;
    CLI::App* color3 = app.add_subcommand("color3", "3-colour, certified against the SDP bound");
    color3->add_option("file", color3_opts.file, "graph file")->required();
    color3->add_option("--mode", color3_opts.mode, "restarts | derand")
        ->check(CLI::IsMember({"restarts", "derand"}));
    color3->add_option("--seed", color3_opts.seed, "RNG seed");
    color3->add_option("--budget", color3_opts.budget,
                       "restarts or atom budget; 0 picks the default");
    color3->add_option("--grid-n", color3_opts.grid_n, "derandomiser grid flips; 0 = default");
    color3->add_flag("--json", compact, "compact single-line JSON");

    GadgetOpts gadget_opts;
    CLI::App* gadget = app.add_subcommand("gadget", "Emit a hardness gadget");
    gadget->add_option("--which", gadget_opts.which, "9 or 17")->required();
    gadget->add_flag("--verify", gadget_opts.verify, "run the exhaustive verifier");
    gadget->add_flag("--json", compact, "compact single-line JSON");

    ReduceOpts reduce_opts;
    CLI::App* reduce = app.add_subcommand("reduce", "Reduce a balanced E3LIN system to a graph");
    reduce->add_option("file", reduce_opts.file, "E3LIN system file")->required();
    reduce->add_flag("--json", compact, "compact single-line JSON");

    OracleOpts oracle_opts;
    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force ground truth for small inputs");
    oracle->add_option("file", oracle_opts.file, "graph or E3LIN file")->required();
    oracle->add_flag("--json", compact, "compact single-line JSON");

    VerifyParamsOpts verify_opts;
    CLI::App* verify = app.add_subcommand("verify-params", "Check the rounding constants");
    verify->add_option("--grid-n", verify_opts.grid_n, "grid points per band")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--json", compact, "compact single-line JSON");

    BenchOpts bench_opts;
    CLI::App* bench = app.add_subcommand("bench", "Round every .graph file in a corpus directory");
    bench->add_option("dir", bench_opts.dir, "corpus directory")->required();
    bench->add_option("--scheme", bench_opts.schemes, "schemes to run (repeatable)");
    bench->add_option("--seeds", bench_opts.seeds, "draws per stochastic scheme")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_opts.seed, "base RNG seed");
    bench->add_option("--eps", bench_opts.eps, "SDP tolerance");
    bench->add_option("--grid-n", bench_opts.grid_n, "derandomiser grid flips");
    bench->add_option("--budget", bench_opts.budget, "derandomiser atom budget");
    bench->add_option("--threads", bench_opts.threads, "worker pool size; 0 = hardware");
    bench->add_flag("--json", compact, "compact single-line JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_opts, compact);
        if (round->parsed()) return cmd_round(round_opts, compact);
        if (color3->parsed()) return cmd_color3(color3_opts, compact);
        if (gadget->parsed()) return cmd_gadget(gadget_opts, compact);
        if (reduce->parsed()) return cmd_reduce(reduce_opts, compact);
        if (oracle->parsed()) return cmd_oracle(oracle_opts, compact);
        if (verify->parsed()) return cmd_verify_params(verify_opts, compact);
        if (bench->parsed()) return cmd_bench(bench_opts, compact);
    } catch (const ParseError& e) {
        std::cerr << "trifree: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "trifree: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "trifree: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "trifree: internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
