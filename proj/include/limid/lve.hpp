#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limid/diagram.hpp"
#include "limid/ordering.hpp"
#include "limid/valuation.hpp"

namespace limid {

enum class OrderKind { MinFill, RevTopo, Given };

struct SolveOptions {
    OrderKind order = OrderKind::MinFill;
    std::vector<std::string> given_order; // used when order == Given

    /// Apply the parentless-decision rewrite when some decision's policy
    /// count exceeds transform_threshold.
    bool auto_transform = true;
    std::uint64_t transform_threshold = 1024;

    /// Abort when an intermediate set grows beyond this many members
    /// (0 = unlimited).
    std::size_t max_set_members = 0;

    /// Run the approximate propagation with this factor (> 0).
    std::optional<double> epsilon;

    /// Cooperative deadline, checked between propagation steps.
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolveStats {
    std::vector<std::string> order;
    int width = 0;
    std::size_t max_set_cardinality = 0;
    std::vector<std::size_t> per_step_cardinalities;
    BigCount strategy_count = 0;
    double wall_time_ms = 0.0;
    std::optional<double> epsilon;
    /// Largest entrywise |p - 1| over all propagated valuations; under a
    /// reverse topological order on a strict diagram this stays at
    /// floating-point noise.
    double max_prob_deviation = 0.0;
    bool transformed = false;
};

struct SolveResult {
    double meu = 0.0;
    Strategy strategy;
    SolveStats stats;
};

/// One valuation set per variable: {(CPT, 0)} for chance variables, one
/// (policy factor, 0) per policy for decisions (tagged with the policy for
/// strategy recovery), and {(1, u_V)} for value variables. Utilities are
/// expected to be scaled to [0, 1] beforehand. Throws ResourceError when a
/// decision's policy count exceeds `policy_cap`.
std::vector<ValuationSet> initialize(const Diagram& d, std::uint64_t policy_cap);

/// Exact solve: set-valued variable elimination with dominance pruning.
/// Scales utilities internally and reports the MEU in original units along
/// with an optimal strategy read off the valuation traces.
SolveResult solve(const Diagram& d, const SolveOptions& opts = {});

/// Exact solve under a caller-supplied elimination order (a permutation of
/// the chance and decision variables of `d`).
SolveResult solve(const Diagram& d, const EliminationOrder& order,
                  SolveOptions opts = {});

} // namespace limid
