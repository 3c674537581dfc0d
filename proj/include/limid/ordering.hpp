#pragma once

#include <string>
#include <vector>

#include "limid/diagram.hpp"

namespace limid {

/// An elimination ordering over the chance and decision variables (value
/// variables are never eliminated), together with its induced width.
struct EliminationOrder {
    std::vector<std::string> vars;
    int width = 0;
};

/// Greedy min-fill ordering on the moral graph. Ties are broken by smaller
/// neighborhood domain cardinality, then by declaration index.
EliminationOrder min_fill_order(const Diagram& d);

/// An ordering in which every variable is eliminated only after all of its
/// chance/decision descendants; among eligible variables the min-fill score
/// decides. Such orders keep probability parts identically one during
/// propagation.
EliminationOrder reverse_topological_order(const Diagram& d);

/// Width of a caller-supplied order (must be a permutation of the chance and
/// decision variables; throws InputError otherwise).
int induced_width(const Diagram& d, const std::vector<std::string>& order);

/// Greedy min-fill width estimate straight from (variables, arcs), without
/// building factors. Used by the random generator's feasibility test.
int greedy_width_estimate(const std::vector<Variable>& vars,
                          const std::vector<std::pair<std::string, std::string>>& arcs);

} // namespace limid
