#include "limid/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "limid/bench.hpp"
#include "limid/errors.hpp"
#include "limid/eval.hpp"
#include "limid/fptas.hpp"
#include "limid/generators.hpp"
#include "limid/io.hpp"
#include "limid/lve.hpp"
#include "limid/oracle.hpp"
#include "limid/preprocess.hpp"
#include "limid/transform.hpp"

namespace limid::cli {

namespace {

std::string slurp(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") {
        std::ostringstream buf;
        buf << stdin_stream.rdbuf();
        return buf.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
    if (path.empty() || path == "-") {
        stdout_stream << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

std::string sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// --order accepts min-fill, rev-topo, or a comma-separated variable list
void apply_order_flag(SolveOptions& opts, const std::string& order) {
    if (order.empty() || order == "min-fill") {
        opts.order = OrderKind::MinFill;
    } else if (order == "rev-topo") {
        opts.order = OrderKind::RevTopo;
    } else {
        opts.order = OrderKind::Given;
        std::string item;
        std::istringstream ss(order);
        while (std::getline(ss, item, ','))
            if (!item.empty()) opts.given_order.push_back(item);
        if (opts.given_order.empty()) throw InputError("--order: empty variable list");
    }
}

std::vector<long long> parse_numbers(const std::string& csv) {
    std::vector<long long> out;
    std::string item;
    std::istringstream ss(csv);
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw InputError("--numbers: '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw InputError("--numbers: expected a comma-separated list");
    return out;
}

struct Args {
    // solve / eval / oracle / minimize / transform
    std::string file;
    std::string order = "min-fill";
    double epsilon = 0.0;
    bool have_epsilon = false;
    std::string stats_out, strategy_out, out_path, strategy_in;
    bool no_transform = false;
    std::uint64_t transform_threshold = 1024;
    std::size_t max_set_members = 0;
    std::uint64_t cap = kDefaultEnumerationCap;
    // gen
    RandomParams rp;
    int urn_n = 1, urn_variant = 1;
    std::string numbers_csv;
    bool idealized = false;
    std::string cnf_path;
    int sat_q = 1;
    // bench
    std::string suite, report_path;
    double timeout_s = 0.0;
    bool have_timeout = false;
};

int dispatch(CLI::App& app, const Args& a, std::istream& in, std::ostream& out) {
    if (app.got_subcommand("solve")) {
        Diagram d = parse_diagram(slurp(a.file, in));
        SolveOptions opts;
        apply_order_flag(opts, a.order);
        opts.auto_transform = !a.no_transform;
        opts.transform_threshold = a.transform_threshold;
        opts.max_set_members = a.max_set_members;
        if (a.have_epsilon) opts.epsilon = a.epsilon;
        SolveResult r = solve(d, opts);
        out << sig12(r.meu) << "\n";
        if (!a.stats_out.empty()) emit(a.stats_out, serialize_stats(r), out);
        if (!a.strategy_out.empty())
            emit(a.strategy_out, serialize_strategy(r.strategy, d), out);
        return 0;
    }
    if (app.got_subcommand("eval")) {
        Diagram d = parse_diagram(slurp(a.file, in));
        Strategy s = parse_strategy(slurp(a.strategy_in, in), d);
        out << sig12(expected_utility(d, s)) << "\n";
        return 0;
    }
    if (app.got_subcommand("minimize")) {
        Diagram d = parse_diagram(slurp(a.file, in));
        emit(a.out_path, serialize_diagram(minimize(d)), out);
        return 0;
    }
    if (app.got_subcommand("transform")) {
        Diagram d = parse_diagram(slurp(a.file, in));
        auto [td, map] = make_decisions_parentless(d);
        (void)map;
        emit(a.out_path, serialize_diagram(td), out);
        return 0;
    }
    if (app.got_subcommand("oracle")) {
        Diagram d = parse_diagram(slurp(a.file, in));
        SolveResult r = brute_force_meu(d, a.cap);
        out << sig12(r.meu) << "\n";
        if (!a.strategy_out.empty())
            emit(a.strategy_out, serialize_strategy(r.strategy, d), out);
        return 0;
    }
    if (app.got_subcommand("bench")) {
        std::ostringstream log;
        BenchReport rep = run_bench(slurp(a.suite, in), log,
                                    a.have_timeout ? std::optional<double>(a.timeout_s)
                                                   : std::nullopt);
        out << log.str();
        emit(a.report_path, rep.to_csv(), out);
        return 0;
    }
    auto* gen = app.get_subcommand("gen");
    if (gen->got_subcommand("random")) {
        emit(a.out_path, serialize_diagram(gen_random(a.rp)), out);
        return 0;
    }
    if (gen->got_subcommand("urn")) {
        emit(a.out_path, serialize_diagram(gen_urn(a.urn_n, a.urn_variant)), out);
        return 0;
    }
    if (gen->got_subcommand("partition")) {
        emit(a.out_path, serialize_diagram(gen_partition(parse_numbers(a.numbers_csv), a.idealized)),
             out);
        return 0;
    }
    if (gen->got_subcommand("sat")) {
        Cnf cnf;
        if (a.cnf_path == "-") {
            cnf = parse_dimacs(in);
        } else {
            std::ifstream f(a.cnf_path);
            if (!f) throw InputError("cannot open '" + a.cnf_path + "'");
            cnf = parse_dimacs(f);
        }
        emit(a.out_path, serialize_diagram(gen_sat(cnf, a.sat_q)), out);
        return 0;
    }
    throw InputError("no subcommand given (try --help)");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"limid: a solver for limited memory influence diagrams"};
    app.require_subcommand(0, 1);
    Args a;

    auto* solve_cmd = app.add_subcommand("solve", "compute the maximum expected utility");
    solve_cmd->add_option("FILE", a.file, "diagram document ('-' for stdin)")->required();
    solve_cmd->add_option("--order", a.order,
                          "min-fill, rev-topo, or a comma-separated variable list");
    solve_cmd->add_option("--epsilon", a.epsilon, "approximation factor (> 0)")
        ->check(CLI::PositiveNumber)
        ->each([&a](const std::string&) { a.have_epsilon = true; });
    solve_cmd->add_option("--stats-out", a.stats_out, "write run statistics (JSON)");
    solve_cmd->add_option("--strategy-out", a.strategy_out, "write the optimal strategy");
    solve_cmd->add_flag("--no-transform", a.no_transform,
                        "never rewrite decisions to parentless form");
    solve_cmd->add_option("--transform-threshold", a.transform_threshold,
                          "policy-count bound that triggers the rewrite");
    solve_cmd->add_option("--max-set-members", a.max_set_members,
                          "abort when an intermediate set outgrows this (0 = off)");

    auto* eval_cmd = app.add_subcommand("eval", "expected utility of a fixed strategy");
    eval_cmd->add_option("FILE", a.file, "diagram document")->required();
    eval_cmd->add_option("--strategy", a.strategy_in, "strategy document")->required();

    auto* min_cmd = app.add_subcommand("minimize", "remove nonrequisite arcs and barren nodes");
    min_cmd->add_option("FILE", a.file)->required();
    min_cmd->add_option("-o,--out", a.out_path, "output path (default stdout)");

    auto* tr_cmd = app.add_subcommand("transform", "rewrite decisions to parentless form");
    tr_cmd->add_option("FILE", a.file)->required();
    tr_cmd->add_option("-o,--out", a.out_path, "output path (default stdout)");

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force the maximum expected utility");
    oracle_cmd->add_option("FILE", a.file)->required();
    oracle_cmd->add_option("--cap", a.cap, "strategy enumeration cap");
    oracle_cmd->add_option("--strategy-out", a.strategy_out, "write the maximizing strategy");

    auto* gen_cmd = app.add_subcommand("gen", "instance generators");
    gen_cmd->require_subcommand(1);
    auto* gr = gen_cmd->add_subcommand("random", "random protocol instance");
    gr->add_option("--d", a.rp.d, "decision count");
    gr->add_option("--c", a.rp.c, "chance count");
    gr->add_option("--omega-d", a.rp.omega_d, "max decision family domain");
    gr->add_option("--omega-c", a.rp.omega_c, "max chance family domain");
    gr->add_option("--width-cap", a.rp.width_cap, "greedy width bound");
    gr->add_option("--seed", a.rp.seed, "random seed");
    gr->add_option("--min-states", a.rp.min_states);
    gr->add_option("--max-states", a.rp.max_states);
    gr->add_option("-o,--out", a.out_path);
    auto* gu = gen_cmd->add_subcommand("urn", "urn game instance");
    gu->add_option("--n", a.urn_n, "participants")->required();
    gu->add_option("--variant", a.urn_variant, "1, 2 or 5");
    gu->add_option("-o,--out", a.out_path);
    auto* gp = gen_cmd->add_subcommand("partition", "partition-reduction instance");
    gp->add_option("--numbers", a.numbers_csv, "comma-separated positive integers")->required();
    gp->add_flag("--idealized", a.idealized, "use exact exp2(-a_i/a) parameters");
    gp->add_option("-o,--out", a.out_path);
    auto* gs = gen_cmd->add_subcommand("sat", "CNF-reduction instance");
    gs->add_option("--cnf", a.cnf_path, "DIMACS file ('-' for stdin)")->required();
    gs->add_option("--q", a.sat_q, "replica count");
    gs->add_option("-o,--out", a.out_path);

    auto* bench_cmd = app.add_subcommand("bench", "benchmark harness");
    bench_cmd->add_option("--suite", a.suite, "suite document (JSON)")->required();
    bench_cmd->add_option("--timeout", a.timeout_s, "per-instance timeout in seconds")
        ->each([&a](const std::string&) { a.have_timeout = true; });
    bench_cmd->add_option("--report", a.report_path, "CSV report path")->required();

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string prog = "limid";
    argv.push_back(prog.data());
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        return dispatch(app, a, in, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace limid::cli
