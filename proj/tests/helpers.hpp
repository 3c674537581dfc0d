#pragma once

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "limid/diagram.hpp"
#include "limid/eval.hpp"
#include "limid/factor.hpp"
#include "limid/generators.hpp"
#include "limid/oracle.hpp"
#include "limid/valuation.hpp"

namespace limid::testing {

// Deterministic uniform draws for test data.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : eng_(seed) {}
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    int range(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool flip() { return (eng_() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

// Eq.(2) evaluated literally: materialize the joint, enumerate every world,
// and dot with the summed utilities. Independent of the elimination path.
inline double naive_expected_utility(const Diagram& d, const Strategy& s) {
    const Factor joint = joint_distribution(d, s);
    double total = 0.0;
    std::vector<int> world(joint.scope().size(), 0);
    do {
        double mass = joint.at(world);
        if (mass == 0.0) continue;
        double util = 0.0;
        for (const auto& vid : d.value_ids()) {
            const Factor& u = d.utility(vid);
            std::vector<int> sub;
            for (const auto& pid : u.scope())
                for (std::size_t k = 0; k < joint.scope().size(); ++k)
                    if (joint.scope()[k] == pid) sub.push_back(world[k]);
            util += u.at(sub);
        }
        total += mass * util;
    } while (next_assignment(world, joint.cards()));
    return total;
}

// Argmax over the full strategy stream using the naive evaluator.
inline double naive_meu(const Diagram& d, std::uint64_t cap = 100000) {
    StrategyStream stream(d, cap);
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    while (auto s = stream.next()) {
        best = std::max(best, naive_expected_utility(d, *s));
        any = true;
    }
    return any ? best : 0.0;
}

// Double-loop Pareto frontier over valuation tables (keeps duplicates'
// first occurrence), written independently of maximal_set.
inline std::vector<Valuation> pareto_reference(const std::vector<Valuation>& members) {
    auto leq = [](const Valuation& a, const Valuation& b) {
        for (std::size_t i = 0; i < a.p().size(); ++i)
            if (a.p().values()[i] > b.p().values()[i]) return false;
        for (std::size_t i = 0; i < a.u().size(); ++i)
            if (a.u().values()[i] > b.u().values()[i]) return false;
        return true;
    };
    std::vector<Valuation> out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (i == j) continue;
            if (leq(members[i], members[j]) && !leq(members[j], members[i])) {
                keep = false;
                break;
            }
        }
        // drop exact duplicates beyond the first
        for (std::size_t j = 0; keep && j < i; ++j)
            if (leq(members[i], members[j]) && leq(members[j], members[i])) keep = false;
        if (keep) out.push_back(members[i]);
    }
    return out;
}

// d-separation oracle: vertex separation in the moral graph of the
// ancestral subgraph of x, y, w.
inline bool dsep_moral_oracle(const Diagram& d, const std::set<std::string>& x,
                              const std::set<std::string>& y, const std::set<std::string>& w) {
    const int n = static_cast<int>(d.variable_count());
    std::vector<bool> anc(n, false);
    std::vector<int> stack;
    for (const auto& id : x) stack.push_back(d.index_of(id));
    for (const auto& id : y) stack.push_back(d.index_of(id));
    for (const auto& id : w) stack.push_back(d.index_of(id));
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (anc[v]) continue;
        anc[v] = true;
        for (int p : d.parents(v)) stack.push_back(p);
    }
    // moralize the ancestral subgraph
    std::vector<std::set<int>> adj(n);
    for (int v = 0; v < n; ++v) {
        if (!anc[v]) continue;
        const auto& ps = d.parents(v);
        for (std::size_t a = 0; a < ps.size(); ++a) {
            adj[ps[a]].insert(v);
            adj[v].insert(ps[a]);
            for (std::size_t b = a + 1; b < ps.size(); ++b) {
                adj[ps[a]].insert(ps[b]);
                adj[ps[b]].insert(ps[a]);
            }
        }
    }
    // reachability from x to y avoiding w
    std::vector<bool> blocked(n, false), seen(n, false);
    for (const auto& id : w) blocked[d.index_of(id)] = true;
    for (const auto& id : x) {
        stack.push_back(d.index_of(id));
        seen[d.index_of(id)] = true;
    }
    std::set<int> targets;
    for (const auto& id : y) targets.insert(d.index_of(id));
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (targets.count(v)) return false;
        for (int u : adj[v])
            if (!seen[u] && !blocked[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return true;
}

inline Factor random_factor(TestRng& rng, std::vector<std::string> scope,
                            std::vector<int> cards, double lo = 0.0, double hi = 1.0) {
    std::size_t n = 1;
    for (int c : cards) n *= static_cast<std::size_t>(c);
    std::vector<double> vals(n);
    for (auto& v : vals) v = rng.uniform(lo, hi);
    return Factor(std::move(scope), std::move(cards), std::move(vals));
}

inline Valuation random_valuation(TestRng& rng, const std::vector<std::string>& scope,
                                  const std::vector<int>& cards, double lo = 0.0,
                                  double hi = 1.0) {
    return Valuation(random_factor(rng, scope, cards, lo, hi),
                     random_factor(rng, scope, cards, lo, hi));
}

inline Valuation scalar_valuation(double p, double u) {
    return Valuation(Factor::scalar(p), Factor::scalar(u));
}

inline bool tables_equal(const Valuation& a, const Valuation& b) {
    return a.p().values() == b.p().values() && a.u().values() == b.u().values();
}

// Set equality on tables, ignoring member order and traces.
inline bool sets_equal(const ValuationSet& a, const ValuationSet& b) {
    if (a.members.size() != b.members.size()) return false;
    std::vector<bool> used(b.members.size(), false);
    for (const auto& x : a.members) {
        bool found = false;
        for (std::size_t j = 0; j < b.members.size(); ++j) {
            if (!used[j] && tables_equal(x, b.members[j])) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

// Small random diagrams for property tests: bounded families, |Delta|
// filtered by the caller via strategy_count.
inline Diagram small_random_diagram(std::uint64_t seed, int max_d = 3, int max_c = 4) {
    RandomParams p;
    TestRng rng(seed * 977 + 13);
    p.d = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(max_d));
    p.c = 1 + static_cast<int>((seed / 7) % static_cast<std::uint64_t>(max_c));
    p.omega_d = 8;
    p.omega_c = 12;
    p.min_states = 2;
    p.max_states = 3;
    p.seed = seed;
    return gen_random(p);
}

} // namespace limid::testing
