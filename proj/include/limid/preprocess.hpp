#pragma once

#include <set>
#include <string>
#include <utility>

#include "limid/diagram.hpp"

namespace limid {

/// Chance/decision variables with no children at all.
std::set<std::string> find_barren(const Diagram& d);

/// d-separation of x from y given w, per the trail-blocking definition
/// (collider triples are active when the middle node or a descendant is in
/// w; all other triples are active when the middle node is not in w).
/// The three sets must be pairwise disjoint.
bool is_d_separated(const Diagram& d, const std::set<std::string>& x,
                    const std::set<std::string>& y, const std::set<std::string>& w);

/// Arcs (X, D) into decisions where X is d-separated from every value node
/// descendant of D given the remaining parents of D and D itself.
std::set<std::pair<std::string, std::string>> nonrequisite_arcs(const Diagram& d);

/// Repeatedly removes all nonrequisite arcs, then all barren nodes, until
/// neither applies. Preserves the maximum expected utility.
Diagram minimize(const Diagram& d);

/// Utility range of a diagram and how it was mapped onto [0, 1].
struct ScalingInfo {
    double k = 0.0;  // smallest utility entry
    double K = 0.0;  // largest utility entry
    int value_count = 0;
    bool trivial = false; // k == K (or no value nodes)
};

/// Rescales every utility table to u' = (u - k) / (K - k). When k == K the
/// diagram is returned unchanged and marked trivial.
std::pair<Diagram, ScalingInfo> scale_utilities(const Diagram& d);

/// Maps an expected utility of the scaled diagram back:
/// E[L] = (K - k) E[L'] + k |V|.
double unscale_meu(double v, const ScalingInfo& info);

} // namespace limid
