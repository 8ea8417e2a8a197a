// Command line front end: congest <run|bench|suite|gadget|gen|route|cycle> ...

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "congest/gadgets.hpp"
#include "congest/harness.hpp"
#include "congest/oracles.hpp"

using namespace congest;

namespace {

struct Common {
    std::uint64_t seed = 1;
    std::optional<Round> budget;
    bool charge = false;
    int c_w = 4;
    std::string out;
    bool timing = false;
};

struct RunArgs {
    std::string algo;
    std::string graph;
    std::string path;
    std::optional<Vertex> s, t;
    double eps = 0.25;
    bool verify = false;
    double prob = -1;
    int max_hops = 12;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "global seed");
    app->add_option("--budget", c.budget, "round budget per simulated phase (default: $CONGEST_MAX_ROUNDS)");
    app->add_flag("--charge", c.charge, "charge asymptotic subroutine bounds instead of measured rounds");
    app->add_option("--cw", c.c_w, "word size constant c_w")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "also write the report to this file");
    app->add_flag("--timing", c.timing, "add wall time to the report (breaks byte-identical output)");
}

void add_run(CLI::App* app, RunArgs& r, bool need_algo = true) {
    auto* a = app->add_option("--algo", r.algo, "algorithm id");
    if (need_algo) a->required();
    app->add_option("--graph", r.graph, "random:..., dag:..., gadget:..., file:PATH")->required();
    app->add_option("--path", r.path, "file with the P_st vertex sequence");
    app->add_option("--s", r.s, "source of P_st");
    app->add_option("--t", r.t, "target of P_st");
    app->add_option("--eps", r.eps, "approximation parameter")->check(CLI::PositiveNumber);
    app->add_flag("--verify", r.verify, "compare against the sequential oracle");
    app->add_option("--prob", r.prob, "override the sampling probability");
    app->add_option("--hmax", r.max_hops, "hop cap when P_st is chosen automatically");
}

SimConfig make_cfg(const Common& c) {
    SimConfig cfg;
    cfg.seed = c.seed;
    cfg.c_w = c.c_w;
    cfg.max_rounds = resolve_budget(c.budget);
    cfg.charge.enabled = c.charge;
    return cfg;
}

RunOptions make_opts(const Common& c, const RunArgs& r) {
    RunOptions o;
    o.algo = r.algo;
    o.eps = r.eps;
    o.verify = r.verify;
    o.cfg = make_cfg(c);
    o.prob_override = r.prob;
    return o;
}

Instance load_instance(const RunArgs& r, bool need_path) {
    InstanceRequest req;
    req.graph = r.graph;
    req.path_file = r.path;
    req.s = r.s;
    req.t = r.t;
    req.max_hops = r.max_hops;
    if (!r.algo.empty()) {
        const auto& info = algorithm(r.algo);
        req.default_directed = info.needs_directed && !info.any_direction;
    }
    return make_instance(req, need_path);
}

void emit(const Common& c, const std::string& text) {
    std::cout << text;
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        if (!f) throw std::runtime_error("cannot write " + c.out);
        f << text;
    }
}

std::pair<Vertex, Vertex> parse_edge(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--fail expects u,v");
    try {
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("--fail expects u,v");
    }
}

std::vector<Vertex> parse_sizes(const std::string& s) {
    std::vector<Vertex> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("bad size '" + item + "'");
        }
    }
    return out;
}

int finish(const Common& c, RunOutcome& out, std::chrono::steady_clock::time_point t0) {
    if (c.timing) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out.report["wall_ms"] = ms;
    }
    emit(c, render_report(out.report));
    return out.verified && !out.pass ? kExitVerifyFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CONGEST simulator and replacement-path / cycle algorithms"};
    app.require_subcommand(1);
    Common common;
    RunArgs run_args;

    auto* run = app.add_subcommand("run", "run one algorithm on one instance");
    add_common(run, common);
    add_run(run, run_args);

    auto* route = app.add_subcommand("route", "route around a failed P_st edge");
    add_common(route, common);
    add_run(route, run_args);
    std::string fail_edge, route_mode = "table";
    route->add_option("--fail", fail_edge, "failed edge u,v")->required();
    route->add_option("--mode", route_mode, "table|onfly");

    auto* cycle = app.add_subcommand("cycle", "construct the shortest cycle through a vertex");
    add_common(cycle, common);
    add_run(cycle, run_args);
    Vertex through = 0;
    std::string cycle_mode = "table";
    cycle->add_option("--through", through, "vertex u")->required();
    cycle->add_option("--mode", cycle_mode, "table|onfly");

    auto* bench = app.add_subcommand("bench", "round scaling over graph sizes");
    add_common(bench, common);
    std::string bench_algo, sizes;
    int bench_seeds = 5, hst = 8;
    double bench_eps = 0.25;
    bench->add_option("--algo", bench_algo, "algorithm id")->required();
    bench->add_option("--sizes", sizes, "ascending comma separated n values")->required();
    bench->add_option("--seeds", bench_seeds, "seeds per size (median taken)");
    bench->add_option("--hst", hst, "hop length of P_st");
    bench->add_option("--eps", bench_eps, "approximation parameter");

    auto* suite = app.add_subcommand("suite", "run a registered corpus with verification");
    add_common(suite, common);
    std::string corpus;
    int scale = 1;
    suite->add_option("corpus", corpus, "exact-corpus|approx-corpus|gadget-corpus|recon-corpus")->required();
    suite->add_option("--scale", scale, "multiply seed counts")->check(CLI::PositiveNumber);

    auto* gadget = app.add_subcommand("gadget", "build a lower-bound gadget and check its dichotomy");
    add_common(gadget, common);
    std::string family;
    int k = 2, q = 4, intersect = 1, sink = 1;
    bool disjoint = false;
    std::string graph_out;
    gadget->add_option("--family", family, "dirw-rpaths|dirunw-rpaths|undir-rpaths|dir-mwc|undirw-mwc|qcycle")
        ->required();
    gadget->add_option("--k", k, "string side length");
    gadget->add_option("--q", q, "cycle length (qcycle)");
    auto* inter_opt = gadget->add_option("--intersect", intersect, "1: strings intersect, 0: disjoint");
    gadget->add_flag("--disjoint", disjoint, "same as --intersect 0")->excludes(inter_opt);
    gadget->add_option("--sink", sink, "add the sink vertex (directed families)");
    gadget->add_option("--graph-out", graph_out, "write the gadget graph here");

    auto* gen = app.add_subcommand("gen", "materialize an instance as files");
    add_common(gen, common);
    std::string gen_graph, gen_out, gen_path_out;
    gen->add_option("--graph", gen_graph, "instance spec")->required();
    gen->add_option("--graph-out", gen_out, "graph file")->required();
    gen->add_option("--path-out", gen_path_out, "write an automatically chosen P_st here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (*run) {
            const AlgoInfo& info = algorithm(run_args.algo);
            Instance inst = load_instance(run_args, info.kind == AlgoKind::rpaths);
            RunOutcome out = run_algorithm(inst, make_opts(common, run_args));
            return finish(common, out, t0);
        }
        if (*route) {
            Instance inst = load_instance(run_args, true);
            RouteRequest req{parse_edge(fail_edge), route_mode};
            RunOutcome out = run_route(inst, make_opts(common, run_args), req);
            return finish(common, out, t0);
        }
        if (*cycle) {
            Instance inst = load_instance(run_args, false);
            RunOutcome out =
                run_cycle_construction(inst, make_opts(common, run_args), through, parse_cycle_mode(cycle_mode));
            return finish(common, out, t0);
        }
        if (*bench) {
            BenchOptions bo;
            bo.algo = bench_algo;
            bo.sizes = parse_sizes(sizes);
            bo.seeds = bench_seeds;
            bo.hst = hst;
            bo.eps = bench_eps;
            bo.cfg = make_cfg(common);
            auto res = run_bench(bo);
            Json j = to_json(res);
            j["seed"] = common.seed;
            j["budget"] = bo.cfg.max_rounds;
            j["charge"] = common.charge;
            std::ostringstream text;
            text << "n\tmedian_rounds\n";
            for (const auto& r : res.rows) text << r.n << '\t' << r.median << '\n';
            text << "slope: " << (res.slope ? std::to_string(*res.slope) : std::string("n/a")) << '\n';
            text << "--- json ---\n" << j.dump(2) << '\n';
            emit(common, text.str());
            return kExitOk;
        }
        if (*suite) {
            auto res = run_suite(corpus, make_cfg(common), scale);
            std::ostringstream text;
            text << "corpus: " << res.corpus << "\ncases: " << res.cases << "\npassed: " << res.passed
                 << "\nverdict: " << (res.failures.empty() ? "pass" : "fail") << '\n';
            for (const auto& f : res.failures) text << "failure: " << f << '\n';
            text << "--- json ---\n" << res.summary.dump(2) << '\n';
            emit(common, text.str());
            return res.failures.empty() ? kExitOk : kExitVerifyFailed;
        }
        if (*gadget) {
            auto fam = parse_family(family);
            if (!fam) throw UsageError("unknown gadget family '" + family + "'");
            auto spec = random_gadget_spec(*fam, k, common.seed, intersect != 0 && !disjoint, q, sink != 0);
            auto gd = gen_gadget(spec);
            auto v = check_dichotomy(spec, gd);
            if (!graph_out.empty()) save_graph(graph_out, gd.graph);
            Json j;
            j["schema"] = kReportSchema;
            j["command"] = "gadget";
            j["family"] = family;
            j["k"] = k;
            if (*fam == GadgetFamily::qcycle) j["q"] = q;
            j["seed"] = common.seed;
            j["n"] = gd.graph.n();
            j["m"] = gd.graph.m();
            j["intersecting"] = v.intersecting;
            j["measured"] = v.measured >= gd.graph.infinity() ? Json("inf") : Json(v.measured);
            j["predicted"] = v.predicted;
            j["verdict"] = v.holds ? "pass" : "fail";
            emit(common, render_report(j));
            return v.holds ? kExitOk : kExitVerifyFailed;
        }
        if (*gen) {
            InstanceRequest req;
            req.graph = gen_graph;
            Instance inst = make_instance(req, !gen_path_out.empty());
            save_graph(gen_out, inst.graph);
            if (!gen_path_out.empty()) {
                std::ofstream f(gen_path_out);
                for (std::size_t i = 0; i < inst.path->vertices.size(); ++i) {
                    f << (i ? " " : "") << inst.path->vertices[i];
                }
                f << '\n';
            }
            Json j;
            j["schema"] = kReportSchema;
            j["command"] = "gen";
            j["spec"] = gen_graph;
            j["n"] = inst.graph.n();
            j["m"] = inst.graph.m();
            j["graph_file"] = gen_out;
            if (inst.path) j["path"] = inst.path->vertices;
            emit(common, render_report(j));
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kExitBudget;
    } catch (const BandwidthViolation& e) {
        std::cerr << "bandwidth violation: " << e.what() << '\n';
        return kExitBandwidth;
    } catch (const GraphError& e) {
        std::cerr << "input error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
