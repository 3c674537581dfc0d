#include "limid/transform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "limid/errors.hpp"

namespace limid {

namespace {

std::string fresh_id(const std::set<std::string>& used, const std::string& base) {
    std::string id = base;
    while (used.count(id)) id = "_" + id;
    return id;
}

Factor rename_in_scope(const Factor& f, const std::string& from, const std::string& to) {
    std::vector<std::string> scope = f.scope();
    for (auto& s : scope)
        if (s == from) s = to;
    return Factor(std::move(scope), f.cards(), f.values());
}

// Rewrites the single decision `did` into its chain gadget.
Diagram transform_one(const Diagram& d, const std::string& did, DecisionGadget& gadget) {
    const int dix = d.index_of(did);
    const std::vector<std::string> parents = d.parent_ids(did);
    const std::vector<int> pcards = d.parent_cards(did);
    const std::size_t m = d.parent_config_count(did);
    const std::vector<std::string>& dstates = d.var(dix).states;

    std::set<std::string> used;
    for (const auto& v : d.variables()) used.insert(v.id);

    gadget.decision = did;
    gadget.parent_order = parents;
    for (std::size_t i = 1; i <= m; ++i) {
        std::string x = fresh_id(used, did + "_x" + std::to_string(i));
        used.insert(x);
        std::string c = fresh_id(used, did + "_d" + std::to_string(i));
        used.insert(c);
        gadget.chain_ids.push_back(x);
        gadget.choice_ids.push_back(c);
    }
    const std::string& last_chain = gadget.chain_ids.back();

    // D's declaration slot becomes D_1, X_1, D_2, X_2, ...
    std::vector<Variable> vars;
    for (const auto& v : d.variables()) {
        if (v.id != did) {
            vars.push_back(v);
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            vars.push_back(Variable{gadget.choice_ids[i], VarKind::Decision, dstates});
            vars.push_back(Variable{gadget.chain_ids[i], VarKind::Chance, dstates});
        }
    }

    std::vector<std::pair<std::string, std::string>> arcs;
    std::vector<std::string> d_children;
    for (const auto& [p, c] : d.arcs()) {
        if (p == did) {
            d_children.push_back(c);
            arcs.emplace_back(last_chain, c);
        } else if (c != did) {
            arcs.emplace_back(p, c);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& p : parents) arcs.emplace_back(p, gadget.chain_ids[i]);
        arcs.emplace_back(gadget.choice_ids[i], gadget.chain_ids[i]);
        if (i > 0) arcs.emplace_back(gadget.chain_ids[i - 1], gadget.chain_ids[i]);
    }

    std::map<std::string, Factor> cpts, utils;
    std::set<std::string> child_set(d_children.begin(), d_children.end());
    for (const auto& [id, f] : d.cpts())
        cpts.emplace(id, child_set.count(id) ? rename_in_scope(f, did, last_chain) : f);
    for (const auto& [id, f] : d.utilities())
        utils.emplace(id, child_set.count(id) ? rename_in_scope(f, did, last_chain) : f);

    // Chain tables need the rebuilt diagram's declaration order for their
    // parent scopes; construct a CPT-less diagram first is not possible, so
    // derive the family scopes directly from `vars`.
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i].id] = static_cast<int>(i);

    for (std::size_t i = 0; i < m; ++i) {
        const std::string& xid = gadget.chain_ids[i];
        std::vector<std::string> family = parents;
        family.push_back(gadget.choice_ids[i]);
        if (i > 0) family.push_back(gadget.chain_ids[i - 1]);
        std::sort(family.begin(), family.end(),
                  [&pos](const std::string& a, const std::string& b) { return pos[a] < pos[b]; });

        std::vector<std::string> scope = family;
        scope.push_back(xid);
        std::vector<int> cards;
        std::map<std::string, std::size_t> at;
        for (std::size_t k = 0; k < scope.size(); ++k) {
            at[scope[k]] = k;
            const Variable& v = vars[pos[scope[k]]];
            cards.push_back(static_cast<int>(v.states.size()));
        }

        // pi index of the pa_D part: declaration order, last parent fastest
        std::vector<std::size_t> ppos;
        for (const auto& p : parents) ppos.push_back(at[p]);
        const std::size_t d_at = at[gadget.choice_ids[i]];
        const std::size_t prev_at = i > 0 ? at[gadget.chain_ids[i - 1]] : 0;
        const std::size_t x_at = at[xid];

        Factor table = Factor::build(scope, cards, [&](const std::vector<int>& a) {
            std::size_t pi = 0;
            for (std::size_t k = 0; k < ppos.size(); ++k)
                pi = pi * static_cast<std::size_t>(pcards[k]) + static_cast<std::size_t>(a[ppos[k]]);
            const int x = a[x_at];
            if (pi == i) {
                const bool chained = (i == 0) || (x == a[prev_at]);
                return (x == a[d_at] && chained) ? 1.0 : 0.0;
            }
            if (i == 0) return 1.0; // no predecessor to copy from
            return x == a[prev_at] ? 1.0 : 0.0;
        });
        cpts.emplace(xid, std::move(table));
    }

    return Diagram(std::move(vars), std::move(arcs), std::move(cpts), std::move(utils),
                   /*strict_normalization=*/false);
}

} // namespace

std::pair<Diagram, TransformMap> make_decisions_parentless(const Diagram& d) {
    TransformMap map;
    Diagram cur = d;
    for (;;) {
        std::string target;
        for (const auto& did : cur.decision_ids()) {
            if (!cur.parents(cur.index_of(did)).empty()) {
                target = did;
                break;
            }
        }
        if (target.empty()) break;
        DecisionGadget g;
        cur = transform_one(cur, target, g);
        map.gadgets.push_back(std::move(g));
    }
    if (map.empty()) return {d, std::move(map)};
    return {std::move(cur), std::move(map)};
}

Strategy lift_strategy(const Strategy& transformed, const TransformMap& map) {
    Strategy out = transformed;
    for (const auto& g : map.gadgets) {
        std::vector<int> table;
        for (const auto& cid : g.choice_ids) {
            auto it = out.policies.find(cid);
            if (it == out.policies.end())
                throw InputError("lift_strategy: strategy lacks a policy for '" + cid + "'");
            if (it->second.table.size() != 1)
                throw InputError("lift_strategy: '" + cid + "' is not a parentless choice");
            table.push_back(it->second.table[0]);
            out.policies.erase(it);
        }
        out.policies[g.decision] = Policy{g.decision, std::move(table)};
    }
    return out;
}

} // namespace limid
