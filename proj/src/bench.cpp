#include "limid/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "limid/errors.hpp"
#include "limid/generators.hpp"
#include "limid/io.hpp"

namespace limid {

using nlohmann::json;

namespace {

BenchConfig config_from(const json& j) {
    BenchConfig c;
    if (j.contains("name")) c.name = j["name"].get<std::string>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("order")) {
        const std::string o = j["order"].get<std::string>();
        if (o == "min-fill") c.order = OrderKind::MinFill;
        else if (o == "rev-topo") c.order = OrderKind::RevTopo;
        else throw InputError("suite: unknown order '" + o + "'");
    }
    return c;
}

RandomParams params_from(const json& j) {
    RandomParams p;
    if (j.contains("d")) p.d = j["d"].get<int>();
    if (j.contains("c")) p.c = j["c"].get<int>();
    if (j.contains("omega_d")) p.omega_d = j["omega_d"].get<int>();
    if (j.contains("omega_c")) p.omega_c = j["omega_c"].get<int>();
    if (j.contains("width_cap")) p.width_cap = j["width_cap"].get<int>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("min_states")) p.min_states = j["min_states"].get<int>();
    if (j.contains("max_states")) p.max_states = j["max_states"].get<int>();
    return p;
}

BenchOutcome run_one(const Diagram& d, const BenchConfig& cfg, double timeout_s) {
    BenchOutcome out;
    out.strategy_count = strategy_count(d);
    SolveOptions opts;
    opts.order = cfg.order;
    opts.epsilon = cfg.epsilon;
    if (timeout_s > 0)
        opts.deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(timeout_s));
    try {
        SolveResult r = solve(d, opts);
        out.solved = true;
        out.time_ms = r.stats.wall_time_ms;
        out.max_set_cardinality = r.stats.max_set_cardinality;
        out.meu = r.meu;
    } catch (const ResourceError&) {
        out.solved = false; // timeout or cap: unsolved, not a failure
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

RelativeStat BenchReport::delta_time(const BenchRow& row) const {
    RelativeStat s;
    if (row.outcomes.size() < 2) return s;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < row.n; ++i) {
        const auto& a = row.outcomes[0][i];
        const auto& b = row.outcomes[1][i];
        if (!a.solved || !b.solved || a.time_ms <= 0.0) continue;
        const double x = (b.time_ms - a.time_ms) / a.time_ms;
        sum += x;
        sum2 += x * x;
        ++s.count;
    }
    if (s.count == 0) return s;
    s.mean = sum / s.count;
    s.stddev = std::sqrt(std::max(0.0, sum2 / s.count - s.mean * s.mean));
    return s;
}

RelativeStat BenchReport::delta_cardinality(const BenchRow& row) const {
    RelativeStat s;
    if (row.outcomes.size() < 2) return s;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < row.n; ++i) {
        const auto& a = row.outcomes[0][i];
        const auto& b = row.outcomes[1][i];
        if (!a.solved || !b.solved || a.max_set_cardinality == 0) continue;
        const double x = (static_cast<double>(b.max_set_cardinality) -
                          static_cast<double>(a.max_set_cardinality)) /
                         static_cast<double>(a.max_set_cardinality);
        sum += x;
        sum2 += x * x;
        ++s.count;
    }
    if (s.count == 0) return s;
    s.mean = sum / s.count;
    s.stddev = std::sqrt(std::max(0.0, sum2 / s.count - s.mean * s.mean));
    return s;
}

std::string BenchReport::to_csv() const {
    std::ostringstream os;
    os << "id,N,solved_pct,mean_time_ms,std_time_ms,max_set_card,strategy_count";
    const bool two = configs.size() >= 2;
    if (two)
        os << ",solved_pct_2,delta_t_mean,delta_t_std,delta_c_mean,delta_c_std";
    os << "\n";
    for (const auto& row : rows) {
        int solved = 0;
        double sum = 0.0, sum2 = 0.0;
        std::size_t max_card = 0;
        BigCount max_strats = 0;
        for (const auto& o : row.outcomes[0]) {
            if (o.solved) {
                ++solved;
                sum += o.time_ms;
                sum2 += o.time_ms * o.time_ms;
                max_card = std::max(max_card, o.max_set_cardinality);
            }
            max_strats = std::max(max_strats, o.strategy_count);
        }
        const double mean = solved ? sum / solved : 0.0;
        const double stddev = solved ? std::sqrt(std::max(0.0, sum2 / solved - mean * mean)) : 0.0;
        os << row.id << "," << row.n << "," << fmt(100.0 * solved / row.n) << ","
           << fmt(mean) << "," << fmt(stddev) << "," << max_card << "," << max_strats.str();
        if (two) {
            int solved2 = 0;
            for (const auto& o : row.outcomes[1])
                if (o.solved) ++solved2;
            const RelativeStat dt = delta_time(row);
            const RelativeStat dc = delta_cardinality(row);
            os << "," << fmt(100.0 * solved2 / row.n);
            if (dt.count)
                os << "," << fmt(dt.mean) << "," << fmt(dt.stddev);
            else
                os << ",,";
            if (dc.count)
                os << "," << fmt(dc.mean) << "," << fmt(dc.stddev);
            else
                os << ",,";
        }
        os << "\n";
    }
    return os.str();
}

BenchReport run_bench(const std::string& suite_json, std::ostream& log,
                      std::optional<double> timeout_override) {
    json doc = json::parse(suite_json, nullptr, false);
    if (doc.is_discarded()) throw InputError("suite: not valid JSON");

    BenchReport report;
    report.timeout_s = doc.value("timeout_s", 0.0);
    if (timeout_override) report.timeout_s = *timeout_override;
    if (doc.contains("configs")) {
        for (const auto& jc : doc["configs"]) report.configs.push_back(config_from(jc));
    }
    if (report.configs.empty()) report.configs.push_back(BenchConfig{});
    if (report.configs.size() > 2) throw InputError("suite: at most two configs");
    if (!doc.contains("rows") || !doc["rows"].is_array())
        throw InputError("suite: missing rows");

    for (const auto& jr : doc["rows"]) {
        BenchRow row;
        row.id = jr.value("id", std::string("row") + std::to_string(report.rows.size()));
        std::vector<Diagram> instances;
        if (jr.contains("files")) {
            for (const auto& jf : jr["files"]) {
                std::ifstream in(jf.get<std::string>());
                if (!in) throw InputError("suite: cannot open '" + jf.get<std::string>() + "'");
                std::ostringstream buf;
                buf << in.rdbuf();
                instances.push_back(parse_diagram(buf.str()));
            }
        } else if (jr.contains("generator")) {
            RandomParams p = params_from(jr["generator"]);
            const int n = jr.value("n", 1);
            for (int i = 0; i < n; ++i) {
                RandomParams pi = p;
                pi.seed = p.seed + static_cast<std::uint64_t>(i);
                instances.push_back(gen_random(pi));
            }
        } else {
            throw InputError("suite: row '" + row.id + "' needs files or a generator");
        }
        row.n = static_cast<int>(instances.size());

        row.outcomes.resize(report.configs.size());
        for (std::size_t ci = 0; ci < report.configs.size(); ++ci) {
            // identical solver configs reuse the measured results, which
            // makes self-comparison rows exactly zero
            if (ci > 0 && report.configs[ci].same_solver(report.configs[0])) {
                row.outcomes[ci] = row.outcomes[0];
                continue;
            }
            for (int i = 0; i < row.n; ++i) {
                BenchOutcome o = run_one(instances[i], report.configs[ci], report.timeout_s);
                log << "bench " << row.id << " instance " << i << " config "
                    << report.configs[ci].name << ": "
                    << (o.solved ? "solved" : "unsolved") << " time_ms=" << o.time_ms
                    << " max_set_card=" << o.max_set_cardinality
                    << " strategies=" << o.strategy_count.str() << "\n";
                row.outcomes[ci].push_back(std::move(o));
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace limid
