#pragma once

#include <cstdint>
#include <vector>

#include "limid/diagram.hpp"

namespace limid {

/// Parameters of the random-instance protocol: bounds on family domain
/// sizes, a greedy-width cap, and the number of chance/decision nodes. The
/// number of value nodes is d + 2.
struct RandomParams {
    int d = 1;               // decision count
    int c = 1;               // chance count
    int omega_d = 8;         // max |Omega_fa_D|
    int omega_c = 16;        // max |Omega_fa_C|
    int width_cap = 10;      // greedy treewidth estimate bound
    std::uint64_t seed = 0;
    int min_states = 2;
    int max_states = 4;
};

/// Random LIMID: 2-4 states per variable, every decision wired to a value
/// node first, then arcs added uniformly at random over the feasible pairs
/// until none fit; CPT columns are normalized uniform draws and utilities
/// uniform on [0, 1]. Deterministic given the seed.
Diagram gen_random(const RandomParams& params);

/// The urn game on n participants. Variant 1: blind decisions; variant 2:
/// previous decision disclosed (plus the initial urn state to the first
/// participant); variant 5: additionally the current urn state is disclosed.
Diagram gen_urn(int n, int variant);

/// The ternary-chain family built from a list of positive integers: an even
/// split of the numbers exists iff the maximum expected utility is 2/3.
/// With idealized = true the chain parameters are exp2(-a_i / a); otherwise
/// they are rounded up to 6b+3 fractional bits, b being the bit length of
/// the number list.
Diagram gen_partition(const std::vector<long long>& numbers, bool idealized);

/// Conjunctive-normal-form formula: clauses of nonzero literals, DIMACS
/// sign convention (+v / -v, 1-based).
struct Cnf {
    int var_count = 0;
    std::vector<std::vector<int>> clauses;
};

/// Replica construction over a CNF formula: q independent copies of a
/// clause-tracking polytree conjoined through a chain of AND variables; the
/// expected utility of any strategy is prod_j SAT(s_j) / m^q.
Diagram gen_sat(const Cnf& cnf, int q);

} // namespace limid
