#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "limid/diagram.hpp"
#include "limid/factor.hpp"

namespace limid {

/// A valuation: a pair of nonnegative tables (probability part, utility
/// part) over one shared scope, plus the list of policies that produced it
/// (used only for strategy recovery, never for arithmetic).
class Valuation {
public:
    using Trace = std::vector<std::shared_ptr<const Policy>>;

    Valuation(Factor p, Factor u, Trace trace = {});

    const Factor& p() const { return p_; }
    const Factor& u() const { return u_; }
    const Trace& trace() const { return trace_; }
    const std::vector<std::string>& scope() const { return p_.scope(); }

    bool all_finite() const { return p_.all_finite() && u_.all_finite(); }

private:
    Factor p_, u_;
    Trace trace_;
};

/// Combination (pq, pv + qu) over the union scope; traces concatenate in
/// argument order.
Valuation combine(const Valuation& phi, const Valuation& psi);

/// Eliminates the variables in z from both parts (sum-marginal).
Valuation eliminate(const Valuation& phi, const std::set<std::string>& z);

/// psi dominates phi: same scope set and entrywise p <= q and u <= v, with
/// exact comparisons on the stored values. Throws StructuralError when the
/// scopes differ as sets.
bool dominates(const Valuation& psi, const Valuation& phi);

/// Canonical order inside a set: lexicographic by probability table, then
/// utility table.
bool canonical_less(const Valuation& a, const Valuation& b);

/// A finite collection of valuations sharing one scope.
struct ValuationSet {
    std::vector<std::string> scope;
    std::vector<Valuation> members;

    std::size_t size() const { return members.size(); }
};

ValuationSet make_set(std::vector<Valuation> members);

/// Pareto reduction: keeps exactly the maximal members; mutually dominating
/// (equal-table) members collapse to the first in canonical order. Output is
/// canonically sorted.
ValuationSet maximal_set(ValuationSet psi);

/// Cross product of combinations; the result has |a| * |b| members.
ValuationSet set_combine(const ValuationSet& a, const ValuationSet& b);

/// Element-wise elimination.
ValuationSet set_eliminate(const ValuationSet& a, const std::set<std::string>& z);

} // namespace limid
