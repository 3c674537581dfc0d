#pragma once

#include <iosfwd>
#include <string>

#include "limid/diagram.hpp"
#include "limid/generators.hpp"
#include "limid/lve.hpp"

namespace limid {

/// Parses a diagram document:
///   { "variables": [{"id", "kind", "states"}...],
///     "arcs": [[parent, child]...],
///     "cpts": {id: [flat values...]},
///     "utilities": {id: [flat values...]},
///     "strict_normalization": bool (default true) }
/// CPT/utility tables are flat row-major lists over [parents..., self] with
/// the last variable fastest. All invariant violations surface as InputError
/// with the offending path.
Diagram parse_diagram(const std::string& text);

/// Canonical serialization: sorted keys, sorted arcs, shortest round-trip
/// number rendering. parse(serialize(d)) reproduces d bit-exactly.
std::string serialize_diagram(const Diagram& d);

/// Strategy document: {"policies": {decision: {"<comma-joined parent state
/// labels>": "<state label>"}}}; the empty configuration keys on "".
Strategy parse_strategy(const std::string& text, const Diagram& d);
std::string serialize_strategy(const Strategy& s, const Diagram& d);

/// Stats document for a solve run; strategy_count is rendered as an exact
/// decimal string, epsilon only appears for approximate runs.
std::string serialize_stats(const SolveResult& result);

/// DIMACS cnf reader ("c" comments, "p cnf <vars> <clauses>" header,
/// zero-terminated clauses).
Cnf parse_dimacs(std::istream& in);

} // namespace limid
