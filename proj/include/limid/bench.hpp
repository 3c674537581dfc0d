#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "limid/lve.hpp"

namespace limid {

struct BenchConfig {
    std::string name = "lve";
    std::optional<double> epsilon;
    OrderKind order = OrderKind::MinFill;

    bool same_solver(const BenchConfig& o) const {
        return epsilon == o.epsilon && order == o.order;
    }
};

struct BenchOutcome {
    bool solved = false;
    double time_ms = 0.0;
    std::size_t max_set_cardinality = 0;
    BigCount strategy_count = 0;
    double meu = 0.0;
};

struct BenchRow {
    std::string id;
    int n = 0;
    // outcomes[config][instance]
    std::vector<std::vector<BenchOutcome>> outcomes;
};

/// Mean +- population standard deviation of relative differences
/// (x2 - x1) / x1 over instances solved by both configs.
struct RelativeStat {
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};

struct BenchReport {
    std::vector<BenchConfig> configs;
    std::vector<BenchRow> rows;
    double timeout_s = 0.0;

    RelativeStat delta_time(const BenchRow& row) const;        // config 1 vs 0
    RelativeStat delta_cardinality(const BenchRow& row) const; // config 1 vs 0
    std::string to_csv() const;
};

/// Runs the instances described by a suite document:
///   { "timeout_s": <seconds>,
///     "configs": [{"name", "epsilon"?, "order"?}...]   (1 or 2 entries),
///     "rows": [{"id", "n"?, "generator": {...}} | {"id", "files": [...]}] }
/// Generator rows draw n instances with seeds seed, seed+1, ... Timeouts
/// count as unsolved. Per-instance outcomes are logged to `log`.
BenchReport run_bench(const std::string& suite_json, std::ostream& log,
                      std::optional<double> timeout_override = std::nullopt);

} // namespace limid
