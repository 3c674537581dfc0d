#include "limid/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "limid/errors.hpp"

namespace limid {

namespace {

// Undirected moral graph over the chance/decision variables: one clique per
// family of a chance/decision node and one per value node's parent set.
struct MoralGraph {
    std::vector<std::string> ids;   // declaration order
    std::vector<int> cards;
    std::map<std::string, int> pos;
    std::vector<std::set<int>> adj;

    void add_clique(const std::vector<int>& members) {
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                adj[members[a]].insert(members[b]);
                adj[members[b]].insert(members[a]);
            }
    }
};

MoralGraph build_moral(const std::vector<Variable>& vars,
                       const std::vector<std::pair<std::string, std::string>>& arcs) {
    MoralGraph g;
    for (const auto& v : vars) {
        if (v.kind == VarKind::Value) continue;
        g.pos[v.id] = static_cast<int>(g.ids.size());
        g.ids.push_back(v.id);
        g.cards.push_back(static_cast<int>(v.states.size()));
    }
    g.adj.assign(g.ids.size(), {});

    std::map<std::string, std::vector<int>> family;
    for (const auto& v : vars) family[v.id] = {};
    for (const auto& [p, c] : arcs)
        if (g.pos.count(p)) family[c].push_back(g.pos.at(p));
    for (const auto& v : vars) {
        auto& fam = family[v.id];
        if (v.kind != VarKind::Value) fam.push_back(g.pos.at(v.id));
        g.add_clique(fam);
    }
    return g;
}

double log_domain(const MoralGraph& g, const std::set<int>& vs) {
    double s = 0.0;
    for (int v : vs) s += std::log2(static_cast<double>(g.cards[v]));
    return s;
}

int fill_count(const MoralGraph& g, int v, const std::vector<bool>& gone) {
    int fills = 0;
    std::vector<int> nb;
    for (int u : g.adj[v])
        if (!gone[u]) nb.push_back(u);
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b)
            if (!g.adj[nb[a]].count(nb[b])) ++fills;
    return fills;
}

// Eliminate v: connect its remaining neighbors pairwise, mark gone.
// Returns the neighbor count at elimination time (clique size - 1).
int eliminate_vertex(MoralGraph& g, int v, std::vector<bool>& gone) {
    std::vector<int> nb;
    for (int u : g.adj[v])
        if (!gone[u]) nb.push_back(u);
    for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b) {
            g.adj[nb[a]].insert(nb[b]);
            g.adj[nb[b]].insert(nb[a]);
        }
    gone[v] = true;
    return static_cast<int>(nb.size());
}

// Min-fill pick among `eligible`, tie-broken by neighborhood domain
// cardinality, then declaration index.
int pick_min_fill(const MoralGraph& g, const std::vector<bool>& gone,
                  const std::vector<int>& eligible) {
    int best = -1;
    int best_fill = 0;
    double best_dom = 0.0;
    for (int v : eligible) {
        const int f = fill_count(g, v, gone);
        std::set<int> nb;
        for (int u : g.adj[v])
            if (!gone[u]) nb.insert(u);
        const double dom = log_domain(g, nb);
        if (best < 0 || f < best_fill ||
            (f == best_fill && dom < best_dom - 1e-12) ||
            (f == best_fill && std::abs(dom - best_dom) <= 1e-12 && v < best)) {
            best = v;
            best_fill = f;
            best_dom = dom;
        }
    }
    return best;
}

EliminationOrder run_greedy(MoralGraph g, const std::function<std::vector<int>(const std::vector<bool>&)>& eligible_fn) {
    EliminationOrder out;
    std::vector<bool> gone(g.ids.size(), false);
    for (std::size_t step = 0; step < g.ids.size(); ++step) {
        const int v = pick_min_fill(g, gone, eligible_fn(gone));
        out.width = std::max(out.width, eliminate_vertex(g, v, gone));
        out.vars.push_back(g.ids[v]);
    }
    return out;
}

} // namespace

EliminationOrder min_fill_order(const Diagram& d) {
    MoralGraph g = build_moral(d.variables(), d.arcs());
    const std::size_t n = g.ids.size();
    return run_greedy(std::move(g), [n](const std::vector<bool>& gone) {
        std::vector<int> el;
        for (std::size_t v = 0; v < n; ++v)
            if (!gone[v]) el.push_back(static_cast<int>(v));
        return el;
    });
}

EliminationOrder reverse_topological_order(const Diagram& d) {
    MoralGraph g = build_moral(d.variables(), d.arcs());
    // children within C u D; a vertex becomes eligible once they are all gone
    std::vector<std::vector<int>> kids(g.ids.size());
    for (const auto& [p, c] : d.arcs())
        if (g.pos.count(p) && g.pos.count(c)) kids[g.pos.at(p)].push_back(g.pos.at(c));
    return run_greedy(std::move(g), [&kids](const std::vector<bool>& gone) {
        std::vector<int> el;
        for (std::size_t v = 0; v < kids.size(); ++v) {
            if (gone[v]) continue;
            bool ok = true;
            for (int c : kids[v])
                if (!gone[c]) { ok = false; break; }
            if (ok) el.push_back(static_cast<int>(v));
        }
        return el;
    });
}

int induced_width(const Diagram& d, const std::vector<std::string>& order) {
    MoralGraph g = build_moral(d.variables(), d.arcs());
    if (order.size() != g.ids.size())
        throw InputError("order: expected a permutation of the chance and decision variables");
    std::set<std::string> seen;
    for (const auto& id : order) {
        if (!g.pos.count(id))
            throw InputError("order: '" + id + "' is not a chance or decision variable");
        if (!seen.insert(id).second)
            throw InputError("order: variable '" + id + "' repeated");
    }
    std::vector<bool> gone(g.ids.size(), false);
    int width = 0;
    for (const auto& id : order)
        width = std::max(width, eliminate_vertex(g, g.pos.at(id), gone));
    return width;
}

int greedy_width_estimate(const std::vector<Variable>& vars,
                          const std::vector<std::pair<std::string, std::string>>& arcs) {
    MoralGraph g = build_moral(vars, arcs);
    const std::size_t n = g.ids.size();
    return run_greedy(std::move(g), [n](const std::vector<bool>& gone) {
        std::vector<int> el;
        for (std::size_t v = 0; v < n; ++v)
            if (!gone[v]) el.push_back(static_cast<int>(v));
        return el;
    }).width;
}

} // namespace limid
