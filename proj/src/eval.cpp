#include "limid/eval.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "limid/errors.hpp"
#include "limid/ordering.hpp"

namespace limid {

namespace {

// (p,u) pair over one shared scope; combination is (pq, pv+qu).
struct Pair {
    Factor p, u;
};

Pair combine_pairs(const Pair& a, const Pair& b) {
    return Pair{factor_product(a.p, b.p),
                factor_sum(factor_product(a.p, b.u), factor_product(b.p, a.u))};
}

Pair eliminate_pair(const Pair& a, const std::set<std::string>& z) {
    return Pair{sum_marginal(a.p, z), sum_marginal(a.u, z)};
}

} // namespace

double expected_utility(const Diagram& d, const Strategy& s) {
    std::vector<Pair> pool;
    for (const auto& v : d.variables()) {
        switch (v.kind) {
            case VarKind::Chance:
                pool.push_back({d.cpt(v.id), Factor::constant_like(d.cpt(v.id), 0.0)});
                break;
            case VarKind::Decision: {
                auto it = s.policies.find(v.id);
                if (it == s.policies.end())
                    throw InputError("strategy: missing policy for decision '" + v.id + "'");
                Factor f = policy_to_factor(it->second, d);
                Factor z = Factor::constant_like(f, 0.0);
                pool.push_back({std::move(f), std::move(z)});
                break;
            }
            case VarKind::Value: {
                const Factor& u = d.utility(v.id);
                pool.push_back({Factor::constant_like(u, 1.0), u});
                break;
            }
        }
    }

    const EliminationOrder order = min_fill_order(d);
    for (const auto& x : order.vars) {
        Pair acc{Factor::scalar(1.0), Factor::scalar(0.0)};
        bool have = false;
        std::vector<Pair> rest;
        for (auto& pr : pool) {
            if (pr.p.has_var(x)) {
                acc = have ? combine_pairs(acc, pr) : std::move(pr);
                have = true;
            } else {
                rest.push_back(std::move(pr));
            }
        }
        pool = std::move(rest);
        if (have) pool.push_back(eliminate_pair(acc, {x}));
    }

    Pair total{Factor::scalar(1.0), Factor::scalar(0.0)};
    for (const auto& pr : pool) total = combine_pairs(total, pr);
    return total.u.values()[0];
}

} // namespace limid
