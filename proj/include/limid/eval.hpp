#pragma once

#include "limid/diagram.hpp"

namespace limid {

/// Expected utility of a strategy, computed by fixed-strategy variable
/// elimination over (probability, utility) table pairs; the full joint is
/// never materialized. Works for arbitrary (also negative) utilities.
double expected_utility(const Diagram& d, const Strategy& s);

} // namespace limid
