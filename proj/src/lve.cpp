#include "limid/lve.hpp"

#include <algorithm>
#include <cmath>

#include "limid/errors.hpp"
#include "limid/fptas.hpp"
#include "limid/preprocess.hpp"
#include "limid/transform.hpp"

namespace limid {

std::vector<ValuationSet> initialize(const Diagram& d, std::uint64_t policy_cap) {
    std::vector<ValuationSet> pool;
    for (const auto& v : d.variables()) {
        switch (v.kind) {
            case VarKind::Chance: {
                const Factor& p = d.cpt(v.id);
                pool.push_back(make_set({Valuation(p, Factor::constant_like(p, 0.0))}));
                break;
            }
            case VarKind::Decision: {
                const BigCount n = d.policy_count(v.id);
                if (n > BigCount(policy_cap))
                    throw ResourceError(
                        "decision '" + v.id + "' has " + n.str() +
                        " policies, above the cap of " + std::to_string(policy_cap) +
                        "; apply make_decisions_parentless first or raise the threshold");
                const std::size_t configs = d.parent_config_count(v.id);
                const int dcard = d.card(d.index_of(v.id));
                std::vector<Valuation> members;
                std::vector<int> table(configs, 0);
                for (;;) {
                    auto policy = std::make_shared<const Policy>(Policy{v.id, table});
                    Factor f = policy_to_factor(*policy, d);
                    Factor z = Factor::constant_like(f, 0.0);
                    members.emplace_back(std::move(f), std::move(z),
                                         Valuation::Trace{std::move(policy)});
                    // next policy table, lexicographic
                    int k = static_cast<int>(configs) - 1;
                    while (k >= 0 && ++table[k] == dcard) table[k--] = 0;
                    if (k < 0) break;
                }
                pool.push_back(make_set(std::move(members)));
                break;
            }
            case VarKind::Value: {
                const Factor& u = d.utility(v.id);
                pool.push_back(make_set({Valuation(Factor::constant_like(u, 1.0), u)}));
                break;
            }
        }
    }
    return pool;
}

namespace {

void check_finite(const ValuationSet& s) {
    for (const auto& m : s.members)
        if (!m.all_finite())
            throw NumericError("non-finite intermediate valuation (scope size " +
                               std::to_string(s.scope.size()) + ")");
}

void check_cap(const ValuationSet& s, std::size_t cap, const SolveStats& stats) {
    if (cap && s.members.size() > cap) {
        std::string steps;
        for (std::size_t c : stats.per_step_cardinalities)
            steps += (steps.empty() ? "" : ",") + std::to_string(c);
        throw ResourceError("intermediate set grew to " + std::to_string(s.members.size()) +
                            " members (cap " + std::to_string(cap) +
                            "); per-step cardinalities so far: [" + steps + "]");
    }
}

double prob_deviation(const ValuationSet& s) {
    double dev = 0.0;
    for (const auto& m : s.members)
        for (double v : m.p().values()) dev = std::max(dev, std::abs(v - 1.0));
    return dev;
}

// max([fold of B]^{-x}) with pruning after every pairwise combination
// (Lemma-35-safe) and optional alpha-coarsening between combinations.
ValuationSet eliminate_step(std::vector<ValuationSet> bucket, const std::string& x,
                            std::optional<double> alpha, const SolveOptions& opts,
                            SolveStats& stats) {
    std::stable_sort(bucket.begin(), bucket.end(),
                     [](const ValuationSet& a, const ValuationSet& b) {
                         return a.members.size() < b.members.size();
                     });
    ValuationSet acc = std::move(bucket.front());
    for (std::size_t j = 1; j < bucket.size(); ++j) {
        acc = set_combine(acc, bucket[j]);
        check_cap(acc, opts.max_set_members, stats);
        if (alpha) acc = coarsen(std::move(acc), *alpha);
        acc = maximal_set(std::move(acc));
    }
    acc = maximal_set(set_eliminate(acc, {x}));
    check_finite(acc);
    check_cap(acc, opts.max_set_members, stats);
    return acc;
}

struct PropagationOutcome {
    Valuation best;
    SolveStats stats;
};

PropagationOutcome propagate(const Diagram& d, const EliminationOrder& order,
                             std::optional<double> alpha, const SolveOptions& opts,
                             std::uint64_t policy_cap) {
    SolveStats stats;
    stats.order = order.vars;
    stats.width = order.width;

    std::vector<ValuationSet> pool = initialize(d, policy_cap);
    for (const auto& x : order.vars) {
        if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
            throw TimeoutError("deadline expired during propagation");
        std::vector<ValuationSet> bucket, rest;
        for (auto& s : pool) {
            const bool hit = std::find(s.scope.begin(), s.scope.end(), x) != s.scope.end();
            (hit ? bucket : rest).push_back(std::move(s));
        }
        pool = std::move(rest);
        if (bucket.empty()) continue;
        ValuationSet psi = eliminate_step(std::move(bucket), x, alpha, opts, stats);
        stats.per_step_cardinalities.push_back(psi.members.size());
        stats.max_set_cardinality = std::max(stats.max_set_cardinality, psi.members.size());
        stats.max_prob_deviation = std::max(stats.max_prob_deviation, prob_deviation(psi));
        pool.push_back(std::move(psi));
    }

    // every remaining set has empty scope; fold and keep the frontier
    ValuationSet total = make_set({Valuation(Factor::scalar(1.0), Factor::scalar(0.0))});
    for (auto& s : pool) {
        total = maximal_set(set_combine(total, s));
        check_finite(total);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < total.members.size(); ++i)
        if (total.members[i].u().values()[0] > total.members[best].u().values()[0]) best = i;
    return {std::move(total.members[best]), std::move(stats)};
}

EliminationOrder order_for(const Diagram& d, const SolveOptions& opts) {
    switch (opts.order) {
        case OrderKind::MinFill: return min_fill_order(d);
        case OrderKind::RevTopo: return reverse_topological_order(d);
        case OrderKind::Given:
            return EliminationOrder{opts.given_order, induced_width(d, opts.given_order)};
    }
    throw InputError("unknown order kind");
}

Strategy strategy_from_trace(const Diagram& d, const Valuation& best) {
    Strategy s;
    for (const auto& p : best.trace()) s.policies[p->decision] = *p;
    for (const auto& did : d.decision_ids())
        if (!s.policies.count(did))
            throw NumericError("strategy trace lost decision '" + did + "'");
    return s;
}

} // namespace

SolveResult solve(const Diagram& d, const SolveOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    if (opts.epsilon && !(*opts.epsilon > 0.0))
        throw InputError("epsilon must be > 0");

    SolveResult result;
    result.stats.strategy_count = strategy_count(d);
    result.stats.epsilon = opts.epsilon;

    auto [scaled, info] = scale_utilities(d);
    if (info.trivial) {
        result.meu = unscale_meu(0.0, info);
        result.strategy = first_strategy(d);
        const auto t1 = std::chrono::steady_clock::now();
        result.stats.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return result;
    }

    bool needs_transform = false;
    for (const auto& did : scaled.decision_ids())
        if (scaled.policy_count(did) > BigCount(opts.transform_threshold)) needs_transform = true;

    Diagram work = std::move(scaled);
    TransformMap tmap;
    if (needs_transform && opts.auto_transform) {
        if (opts.order == OrderKind::Given)
            throw InputError(
                "an explicit elimination order cannot be combined with the automatic "
                "parentless-decision rewrite; pass --no-transform or drop the order");
        auto [td, tm] = make_decisions_parentless(work);
        work = std::move(td);
        tmap = std::move(tm);
    }
    result.stats.transformed = !tmap.empty();

    const EliminationOrder order = order_for(work, opts);
    std::optional<double> alpha;
    if (opts.epsilon)
        alpha = 1.0 + *opts.epsilon / (2.0 * static_cast<double>(work.variable_count()));

    PropagationOutcome out = propagate(work, order, alpha, opts, opts.transform_threshold);
    result.meu = unscale_meu(out.best.u().values()[0], info);
    if (!std::isfinite(result.meu)) throw NumericError("non-finite maximum expected utility");
    Strategy s = strategy_from_trace(work, out.best);
    result.strategy = tmap.empty() ? std::move(s) : lift_strategy(s, tmap);

    result.stats.order = std::move(out.stats.order);
    result.stats.width = out.stats.width;
    result.stats.max_set_cardinality = out.stats.max_set_cardinality;
    result.stats.per_step_cardinalities = std::move(out.stats.per_step_cardinalities);
    result.stats.max_prob_deviation = out.stats.max_prob_deviation;
    const auto t1 = std::chrono::steady_clock::now();
    result.stats.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return result;
}

SolveResult solve(const Diagram& d, const EliminationOrder& order, SolveOptions opts) {
    opts.order = OrderKind::Given;
    opts.given_order = order.vars;
    return solve(d, opts);
}

} // namespace limid
