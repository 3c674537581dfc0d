#include "limid/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "limid/errors.hpp"

namespace limid {

namespace {
constexpr double kNormalizationTol = 1e-9;

std::string config_label(const Diagram& d, const std::vector<std::string>& parent_ids,
                         const std::vector<int>& config) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parent_ids.size(); ++i) {
        if (i) os << ", ";
        os << parent_ids[i] << "=" << d.var(d.index_of(parent_ids[i])).states[config[i]];
    }
    os << ")";
    return os.str();
}
} // namespace

std::string to_string(VarKind k) {
    switch (k) {
        case VarKind::Chance: return "chance";
        case VarKind::Decision: return "decision";
        case VarKind::Value: return "value";
    }
    return "?";
}

Diagram::Diagram(std::vector<Variable> variables,
                 std::vector<std::pair<std::string, std::string>> arcs,
                 std::map<std::string, Factor> cpts,
                 std::map<std::string, Factor> utilities,
                 bool strict_normalization)
    : vars_(std::move(variables)),
      arcs_(std::move(arcs)),
      cpts_(std::move(cpts)),
      utilities_(std::move(utilities)),
      strict_(strict_normalization) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!index_.emplace(vars_[i].id, static_cast<int>(i)).second)
            throw InputError("variables: duplicate id '" + vars_[i].id + "'");
    }
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

    parents_.assign(vars_.size(), {});
    children_.assign(vars_.size(), {});
    for (const auto& [p, c] : arcs_) {
        if (!index_.count(p)) throw InputError("arcs: unknown variable '" + p + "'");
        if (!index_.count(c)) throw InputError("arcs: unknown variable '" + c + "'");
        if (p == c) throw InputError("arcs: self-loop on '" + p + "'");
        parents_[index_[c]].push_back(index_[p]);
        children_[index_[p]].push_back(index_[c]);
    }
    // parents/children in declaration order, deterministically
    for (auto& v : parents_) std::sort(v.begin(), v.end());
    for (auto& v : children_) std::sort(v.begin(), v.end());

    validate();
}

void Diagram::validate() {
    for (const auto& v : vars_) {
        if (v.kind == VarKind::Value) {
            if (!v.states.empty())
                throw InputError("variables." + v.id + ": value variables have no states");
        } else if (v.states.size() < 2) {
            throw InputError("variables." + v.id + ": " + to_string(v.kind) +
                             " variables need at least 2 states");
        }
        std::vector<std::string> sorted_states = v.states;
        std::sort(sorted_states.begin(), sorted_states.end());
        if (std::adjacent_find(sorted_states.begin(), sorted_states.end()) != sorted_states.end())
            throw InputError("variables." + v.id + ": duplicate state label");
    }

    // acyclicity via Kahn's algorithm; also fills topo_
    std::vector<int> indeg(vars_.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i)
        indeg[i] = static_cast<int>(parents_[i].size());
    std::deque<int> q;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (indeg[i] == 0) q.push_back(static_cast<int>(i));
    topo_.clear();
    while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        topo_.push_back(i);
        for (int c : children_[i])
            if (--indeg[c] == 0) q.push_back(c);
    }
    if (topo_.size() != vars_.size()) throw InputError("arcs: the graph contains a cycle");

    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].kind == VarKind::Value && !children_[i].empty())
            throw InputError("variables." + vars_[i].id + ": value nodes have no children");

    // every factor present, over exactly the declared family
    for (const auto& v : vars_) {
        if (v.kind == VarKind::Chance) {
            auto it = cpts_.find(v.id);
            if (it == cpts_.end()) throw InputError("cpts: missing table for '" + v.id + "'");
            std::vector<std::string> want = parent_ids(v.id);
            want.push_back(v.id);
            if (it->second.scope() != want)
                throw InputError("cpts." + v.id + ": scope does not match [parents..., " + v.id + "]");
            for (std::size_t k = 0; k < want.size(); ++k)
                if (it->second.cards()[k] != card(index_of(want[k])))
                    throw InputError("cpts." + v.id + ": cardinality mismatch on '" + want[k] + "'");
            if (!it->second.all_finite())
                throw InputError("cpts." + v.id + ": non-finite entry");
            if (!it->second.all_nonnegative())
                throw InputError("cpts." + v.id + ": negative entry");
        } else if (v.kind == VarKind::Value) {
            auto it = utilities_.find(v.id);
            if (it == utilities_.end())
                throw InputError("utilities: missing table for '" + v.id + "'");
            const std::vector<std::string> want = parent_ids(v.id);
            if (it->second.scope() != want)
                throw InputError("utilities." + v.id + ": scope does not match parent set");
            for (std::size_t k = 0; k < want.size(); ++k)
                if (it->second.cards()[k] != card(index_of(want[k])))
                    throw InputError("utilities." + v.id + ": cardinality mismatch on '" + want[k] + "'");
            if (!it->second.all_finite())
                throw InputError("utilities." + v.id + ": non-finite entry");
        }
    }
    for (const auto& [id, f] : cpts_) {
        (void)f;
        if (!index_.count(id) || vars_[index_[id]].kind != VarKind::Chance)
            throw InputError("cpts." + id + ": not a chance variable");
    }
    for (const auto& [id, f] : utilities_) {
        (void)f;
        if (!index_.count(id) || vars_[index_[id]].kind != VarKind::Value)
            throw InputError("utilities." + id + ": not a value variable");
    }

    if (strict_) {
        for (const auto& v : vars_) {
            if (v.kind != VarKind::Chance) continue;
            const Factor& f = cpts_.at(v.id);
            const int nstates = card(index_of(v.id));
            const std::vector<std::string> pids = parent_ids(v.id);
            const std::vector<int> pcards = parent_cards(v.id);
            std::vector<int> config(pcards.size(), 0);
            std::size_t base = 0;
            do {
                double s = 0.0;
                for (int x = 0; x < nstates; ++x) s += f.values()[base + x];
                if (std::abs(s - 1.0) > kNormalizationTol)
                    throw InputError("cpts." + v.id + ": column for parent configuration " +
                                     config_label(*this, pids, config) + " sums to " +
                                     std::to_string(s));
                base += static_cast<std::size_t>(nstates);
            } while (next_assignment(config, pcards));
        }
    }
}

int Diagram::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw InputError("unknown variable '" + id + "'");
    return it->second;
}

std::vector<std::string> Diagram::parent_ids(const std::string& id) const {
    std::vector<std::string> out;
    for (int p : parents_[index_of(id)]) out.push_back(vars_[p].id);
    return out;
}

bool Diagram::has_arc(const std::string& parent, const std::string& child) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(parent, child));
}

std::vector<std::string> Diagram::chance_ids() const {
    std::vector<std::string> out;
    for (const auto& v : vars_)
        if (v.kind == VarKind::Chance) out.push_back(v.id);
    return out;
}

std::vector<std::string> Diagram::decision_ids() const {
    std::vector<std::string> out;
    for (const auto& v : vars_)
        if (v.kind == VarKind::Decision) out.push_back(v.id);
    return out;
}

std::vector<std::string> Diagram::value_ids() const {
    std::vector<std::string> out;
    for (const auto& v : vars_)
        if (v.kind == VarKind::Value) out.push_back(v.id);
    return out;
}

std::vector<std::string> Diagram::chance_decision_ids() const {
    std::vector<std::string> out;
    for (const auto& v : vars_)
        if (v.kind != VarKind::Value) out.push_back(v.id);
    return out;
}

const Factor& Diagram::cpt(const std::string& id) const {
    auto it = cpts_.find(id);
    if (it == cpts_.end()) throw InputError("no CPT for '" + id + "'");
    return it->second;
}

const Factor& Diagram::utility(const std::string& id) const {
    auto it = utilities_.find(id);
    if (it == utilities_.end()) throw InputError("no utility for '" + id + "'");
    return it->second;
}

std::size_t Diagram::parent_config_count(const std::string& id) const {
    std::size_t n = 1;
    for (int p : parents_[index_of(id)]) n *= static_cast<std::size_t>(card(p));
    return n;
}

BigCount Diagram::policy_count(const std::string& decision) const {
    const int i = index_of(decision);
    if (vars_[i].kind != VarKind::Decision)
        throw InputError("'" + decision + "' is not a decision variable");
    BigCount n = 1;
    const BigCount base = card(i);
    std::size_t configs = parent_config_count(decision);
    for (std::size_t k = 0; k < configs; ++k) n *= base;
    return n;
}

std::vector<int> Diagram::parent_cards(const std::string& id) const {
    std::vector<int> out;
    for (int p : parents_[index_of(id)]) out.push_back(card(p));
    return out;
}

std::vector<int> Diagram::descendants(int i) const {
    std::vector<bool> seen(vars_.size(), false);
    std::deque<int> q(children_[i].begin(), children_[i].end());
    std::vector<int> out;
    while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        if (seen[c]) continue;
        seen[c] = true;
        out.push_back(c);
        for (int cc : children_[c]) q.push_back(cc);
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigCount strategy_count(const Diagram& d) {
    BigCount n = 1;
    for (const auto& id : d.decision_ids()) n *= d.policy_count(id);
    return n;
}

Factor policy_to_factor(const Policy& p, const Diagram& d) {
    const int di = d.index_of(p.decision);
    if (d.var(di).kind != VarKind::Decision)
        throw InputError("policy: '" + p.decision + "' is not a decision variable");
    const std::size_t nconf = d.parent_config_count(p.decision);
    if (p.table.size() != nconf)
        throw InputError("policy for '" + p.decision + "': table has " +
                         std::to_string(p.table.size()) + " entries, expected " +
                         std::to_string(nconf));
    std::vector<std::string> scope = d.parent_ids(p.decision);
    scope.push_back(p.decision);
    std::vector<int> cards = d.parent_cards(p.decision);
    const int dcard = d.card(di);
    cards.push_back(dcard);
    std::vector<double> vals(nconf * static_cast<std::size_t>(dcard), 0.0);
    for (std::size_t c = 0; c < nconf; ++c) {
        if (p.table[c] < 0 || p.table[c] >= dcard)
            throw InputError("policy for '" + p.decision + "': state index out of range");
        vals[c * static_cast<std::size_t>(dcard) + static_cast<std::size_t>(p.table[c])] = 1.0;
    }
    return Factor(std::move(scope), std::move(cards), std::move(vals));
}

Strategy first_strategy(const Diagram& d) {
    Strategy s;
    for (const auto& id : d.decision_ids())
        s.policies[id] = Policy{id, std::vector<int>(d.parent_config_count(id), 0)};
    return s;
}

Factor joint_distribution(const Diagram& d, const Strategy& s) {
    Factor acc = Factor::scalar(1.0);
    for (const auto& v : d.variables()) {
        if (v.kind == VarKind::Chance) {
            acc = factor_product(acc, d.cpt(v.id));
        } else if (v.kind == VarKind::Decision) {
            auto it = s.policies.find(v.id);
            if (it == s.policies.end())
                throw InputError("strategy: missing policy for decision '" + v.id + "'");
            acc = factor_product(acc, policy_to_factor(it->second, d));
        }
    }
    return acc;
}

} // namespace limid
