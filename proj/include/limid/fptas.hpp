#pragma once

#include <cstdint>
#include <optional>

#include "limid/lve.hpp"
#include "limid/valuation.hpp"

namespace limid {

/// Approximation setup: alpha = 1 + epsilon / (2 |U|) where |U| counts all
/// variables of the diagram being solved.
struct ApproxConfig {
    double epsilon = 0.0;
    double alpha = 1.0;
};

ApproxConfig make_approx_config(double epsilon, std::size_t variable_count);

/// Bucket index floor(log_alpha v) for v > 0, with values within 4 ulps of
/// an exact power of alpha snapped to the boundary bucket.
long long log_bucket(double v, double alpha);

/// phi <= alpha * psi on both parts (Def-24-style comparison; alpha >= 1).
bool leq_alpha(const Valuation& phi, const Valuation& psi, double alpha);

/// Equal scopes and, per entry of each part, either exactly equal values or
/// both strictly positive with equal log_alpha buckets.
bool alpha_equivalent(const Valuation& phi, const Valuation& psi, double alpha);

/// G_alpha: keeps one representative per alpha-equivalence class — the class
/// member with the lexicographically smallest probability table (ties broken
/// by utility table). The output is a <=_alpha-covering of the input.
ValuationSet coarsen(ValuationSet psi, double alpha);

/// alpha-combination: coarsen(set_combine(a, b), alpha).
ValuationSet alpha_combine(const ValuationSet& a, const ValuationSet& b, double alpha);

/// epsilon-LVE: the exact propagation loop with alpha-combination in place
/// of plain set combination. The returned utility u satisfies
/// u <= MEU <= (1 + epsilon) u.
SolveResult solve_approx(const Diagram& d, double epsilon, SolveOptions opts = {});

} // namespace limid
