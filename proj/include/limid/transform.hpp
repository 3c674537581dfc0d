#pragma once

#include <string>
#include <utility>
#include <vector>

#include "limid/diagram.hpp"

namespace limid {

/// Record of one rewritten decision: the parent ordering that indexes the
/// configurations pi_1 < ... < pi_m (declaration order, last parent fastest)
/// and the ids of the introduced chance/decision chain.
struct DecisionGadget {
    std::string decision;                  // original decision id
    std::vector<std::string> parent_order; // pa_D in declaration order
    std::vector<std::string> chain_ids;    // X_1 ... X_m
    std::vector<std::string> choice_ids;   // D_1 ... D_m
};

struct TransformMap {
    std::vector<DecisionGadget> gadgets;
    bool empty() const { return gadgets.empty(); }
};

/// Rewrites every decision with parents into a chain of parentless
/// decisions plus deterministic chance nodes carrying the selection tables;
/// children of the decision are re-wired to the last chain node. The result
/// has equal maximum expected utility. Diagrams whose decisions are already
/// parentless are returned unchanged with an empty map; otherwise the output
/// has strict_normalization = false (the chain tables are not mass
/// functions).
std::pair<Diagram, TransformMap> make_decisions_parentless(const Diagram& d);

/// Maps a strategy for the transformed diagram back to the original:
/// delta_D(pi_i) is the state chosen by the i-th chain decision. Policies of
/// untouched decisions pass through. Throws InputError when the strategy
/// does not cover a gadget.
Strategy lift_strategy(const Strategy& transformed, const TransformMap& map);

} // namespace limid
