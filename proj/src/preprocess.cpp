#include "limid/preprocess.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>

#include "limid/errors.hpp"

namespace limid {

std::set<std::string> find_barren(const Diagram& d) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < d.variable_count(); ++i) {
        const Variable& v = d.var(static_cast<int>(i));
        if (v.kind == VarKind::Value) continue;
        if (d.children(static_cast<int>(i)).empty()) out.insert(v.id);
    }
    return out;
}

bool is_d_separated(const Diagram& d, const std::set<std::string>& x,
                    const std::set<std::string>& y, const std::set<std::string>& w) {
    for (const auto& id : x)
        if (y.count(id) || w.count(id))
            throw InputError("is_d_separated: x, y, w must be disjoint");
    for (const auto& id : y)
        if (w.count(id)) throw InputError("is_d_separated: x, y, w must be disjoint");
    if (x.empty() || y.empty()) return true;

    const int n = static_cast<int>(d.variable_count());
    std::vector<bool> in_w(n, false), in_y(n, false);
    for (const auto& id : w) in_w[d.index_of(id)] = true;
    for (const auto& id : y) in_y[d.index_of(id)] = true;

    // ancestors of w (including w): needed for collider activation
    std::vector<bool> anc(n, false);
    {
        std::deque<int> q;
        for (const auto& id : w) q.push_back(d.index_of(id));
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            if (anc[v]) continue;
            anc[v] = true;
            for (int p : d.parents(v)) q.push_back(p);
        }
    }

    // reachability over (node, entered-from-child?) states
    enum { kFromChild = 0, kFromParent = 1 };
    std::vector<std::array<bool, 2>> visited(n, {false, false});
    std::deque<std::pair<int, int>> q;
    for (const auto& id : x) q.emplace_back(d.index_of(id), kFromChild);
    while (!q.empty()) {
        auto [v, dir] = q.front();
        q.pop_front();
        if (visited[v][dir]) continue;
        visited[v][dir] = true;
        if (!in_w[v] && in_y[v]) return false;
        if (dir == kFromChild) {
            // trail arrives against the arc: may leave to parents and children
            if (!in_w[v]) {
                for (int p : d.parents(v)) q.emplace_back(p, kFromChild);
                for (int c : d.children(v)) q.emplace_back(c, kFromParent);
            }
        } else {
            // trail arrives along the arc: children unless blocked, parents
            // only when v activates a collider (v is an ancestor of w)
            if (!in_w[v])
                for (int c : d.children(v)) q.emplace_back(c, kFromParent);
            if (anc[v])
                for (int p : d.parents(v)) q.emplace_back(p, kFromChild);
        }
    }
    return true;
}

std::set<std::pair<std::string, std::string>> nonrequisite_arcs(const Diagram& d) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& did : d.decision_ids()) {
        const int di = d.index_of(did);
        if (d.parents(di).empty()) continue;
        std::set<std::string> value_desc;
        for (int desc : d.descendants(di))
            if (d.var(desc).kind == VarKind::Value) value_desc.insert(d.var(desc).id);
        for (int pi : d.parents(di)) {
            const std::string& pid = d.var(pi).id;
            std::set<std::string> w{did};
            for (int other : d.parents(di))
                if (other != pi) w.insert(d.var(other).id);
            if (is_d_separated(d, {pid}, value_desc, w)) out.insert({pid, did});
        }
    }
    return out;
}

namespace {

Diagram rebuild_without(const Diagram& d,
                        const std::set<std::string>& drop_vars,
                        const std::set<std::pair<std::string, std::string>>& drop_arcs) {
    std::vector<Variable> vars;
    for (const auto& v : d.variables())
        if (!drop_vars.count(v.id)) vars.push_back(v);
    std::vector<std::pair<std::string, std::string>> arcs;
    for (const auto& a : d.arcs()) {
        if (drop_vars.count(a.first) || drop_vars.count(a.second)) continue;
        if (drop_arcs.count(a)) continue;
        arcs.push_back(a);
    }
    std::map<std::string, Factor> cpts, utils;
    for (const auto& [id, f] : d.cpts())
        if (!drop_vars.count(id)) cpts.emplace(id, f);
    for (const auto& [id, f] : d.utilities())
        if (!drop_vars.count(id)) utils.emplace(id, f);
    return Diagram(std::move(vars), std::move(arcs), std::move(cpts), std::move(utils),
                   d.strict_normalization());
}

} // namespace

Diagram minimize(const Diagram& d) {
    Diagram cur = d;
    for (;;) {
        const auto arcs = nonrequisite_arcs(cur);
        if (!arcs.empty()) cur = rebuild_without(cur, {}, arcs);
        const auto barren = find_barren(cur);
        if (!barren.empty()) cur = rebuild_without(cur, barren, {});
        if (arcs.empty() && barren.empty()) return cur;
    }
}

std::pair<Diagram, ScalingInfo> scale_utilities(const Diagram& d) {
    ScalingInfo info;
    info.value_count = static_cast<int>(d.value_ids().size());
    if (info.value_count == 0 || d.utilities().empty()) {
        info.trivial = true;
        return {d, info};
    }
    double k = std::numeric_limits<double>::infinity();
    double K = -std::numeric_limits<double>::infinity();
    for (const auto& [id, f] : d.utilities()) {
        (void)id;
        for (double v : f.values()) {
            k = std::min(k, v);
            K = std::max(K, v);
        }
    }
    info.k = k;
    info.K = K;
    if (k == K) {
        info.trivial = true;
        return {d, info};
    }
    std::map<std::string, Factor> utils;
    for (const auto& [id, f] : d.utilities()) {
        std::vector<double> vals = f.values();
        for (double& v : vals) v = (v - k) / (K - k);
        utils.emplace(id, Factor(f.scope(), f.cards(), std::move(vals)));
    }
    Diagram scaled(d.variables(), d.arcs(), d.cpts(), std::move(utils),
                   d.strict_normalization());
    return {std::move(scaled), info};
}

double unscale_meu(double v, const ScalingInfo& info) {
    if (info.trivial) return info.k * info.value_count;
    return (info.K - info.k) * v + info.k * info.value_count;
}

} // namespace limid
