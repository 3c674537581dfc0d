#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "limid/factor.hpp"

namespace limid {

using BigCount = boost::multiprecision::cpp_int;

enum class VarKind { Chance, Decision, Value };

std::string to_string(VarKind k);

struct Variable {
    std::string id;
    VarKind kind = VarKind::Chance;
    std::vector<std::string> states; // empty exactly for value variables
};

/// Per-decision lookup table: table[parent linear index] = chosen state index.
/// Parent configurations are indexed row-major over the parents in diagram
/// declaration order, last parent fastest. A parentless decision has a
/// one-entry table (the empty configuration).
struct Policy {
    std::string decision;
    std::vector<int> table;

    bool operator==(const Policy&) const = default;
};

/// One policy per decision variable.
struct Strategy {
    std::map<std::string, Policy> policies;

    bool operator==(const Strategy&) const = default;
};

/// A limited memory influence diagram: a DAG of chance/decision/value
/// variables with a CPT per chance variable and a utility table per value
/// variable. Immutable after construction; the constructor validates all
/// structural invariants and throws InputError with a precise message when
/// one fails.
class Diagram {
public:
    Diagram(std::vector<Variable> variables,
            std::vector<std::pair<std::string, std::string>> arcs,
            std::map<std::string, Factor> cpts,
            std::map<std::string, Factor> utilities,
            bool strict_normalization = true);

    const std::vector<Variable>& variables() const { return vars_; }
    std::size_t variable_count() const { return vars_.size(); }
    const Variable& var(int i) const { return vars_[i]; }
    bool has_var(const std::string& id) const { return index_.count(id) > 0; }
    int index_of(const std::string& id) const; // throws on unknown id
    VarKind kind_of(const std::string& id) const { return vars_[index_of(id)].kind; }
    int card(int i) const { return static_cast<int>(vars_[i].states.size()); }
    int card(const std::string& id) const { return card(index_of(id)); }

    /// Parents/children as indices, in declaration order.
    const std::vector<int>& parents(int i) const { return parents_[i]; }
    const std::vector<int>& children(int i) const { return children_[i]; }
    std::vector<std::string> parent_ids(const std::string& id) const;

    /// Arcs as (parent id, child id), sorted lexicographically.
    const std::vector<std::pair<std::string, std::string>>& arcs() const { return arcs_; }
    bool has_arc(const std::string& parent, const std::string& child) const;

    std::vector<std::string> chance_ids() const;
    std::vector<std::string> decision_ids() const;
    std::vector<std::string> value_ids() const;
    /// Ids of chance and decision variables, in declaration order.
    std::vector<std::string> chance_decision_ids() const;

    const Factor& cpt(const std::string& id) const;
    const Factor& utility(const std::string& id) const;
    const std::map<std::string, Factor>& cpts() const { return cpts_; }
    const std::map<std::string, Factor>& utilities() const { return utilities_; }
    bool strict_normalization() const { return strict_; }

    /// Number of parent configurations of a variable.
    std::size_t parent_config_count(const std::string& id) const;
    /// Number of policies |Omega_D|^{|Omega_pa_D|} of a decision.
    BigCount policy_count(const std::string& decision) const;
    /// State cardinalities of a variable's parents, declaration order.
    std::vector<int> parent_cards(const std::string& id) const;

    /// Topological order over all variables (indices).
    const std::vector<int>& topological_order() const { return topo_; }
    /// Indices of all descendants of `i` (not including `i`).
    std::vector<int> descendants(int i) const;

private:
    std::vector<Variable> vars_;
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> parents_, children_;
    std::vector<std::pair<std::string, std::string>> arcs_;
    std::map<std::string, Factor> cpts_, utilities_;
    bool strict_ = true;
    std::vector<int> topo_;

    void validate();
};

/// Total strategy count |Delta| = prod_D |Omega_D|^{|Omega_pa_D|}, exact.
BigCount strategy_count(const Diagram& d);

/// Degenerate 0/1 mass function encoding a policy: a factor over
/// [pa_D..., D] that puts all mass on the chosen state per parent
/// configuration.
Factor policy_to_factor(const Policy& p, const Diagram& d);

/// Strategy whose every policy picks state 0 everywhere.
Strategy first_strategy(const Diagram& d);

/// Product of all chance CPTs and policy factors: the joint mass function
/// over the chance and decision variables induced by the strategy.
Factor joint_distribution(const Diagram& d, const Strategy& s);

} // namespace limid
