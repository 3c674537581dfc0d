#include "limid/fptas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "limid/errors.hpp"

namespace limid {

namespace {
// Sentinel bucket for exact zeros: zeros form their own class.
constexpr long long kZeroBucket = std::numeric_limits<long long>::min();

bool within_ulps(double a, double b, int ulps) {
    if (a == b) return true;
    for (int i = 0; i < ulps; ++i) {
        a = std::nextafter(a, b);
        if (a == b) return true;
    }
    return false;
}
} // namespace

ApproxConfig make_approx_config(double epsilon, std::size_t variable_count) {
    if (!(epsilon > 0.0)) throw InputError("epsilon must be > 0");
    return ApproxConfig{epsilon, 1.0 + epsilon / (2.0 * static_cast<double>(variable_count))};
}

long long log_bucket(double v, double alpha) {
    const double r = std::log(v) / std::log(alpha);
    double k = std::floor(r);
    // values a hair under an exact power of alpha belong to the upper bucket
    if (within_ulps(v, std::pow(alpha, k + 1.0), 4)) k += 1.0;
    return static_cast<long long>(k);
}

namespace {

void bucket_signature(const Factor& f, double alpha, std::vector<long long>& out) {
    for (double v : f.values())
        out.push_back(v > 0.0 ? log_bucket(v, alpha) : kZeroBucket);
}

std::vector<long long> signature(const Valuation& phi, double alpha) {
    std::vector<long long> sig;
    sig.reserve(2 * phi.p().size());
    bucket_signature(phi.p(), alpha, sig);
    bucket_signature(phi.u(), alpha, sig);
    return sig;
}

bool leq_alpha_parts(const Factor& f, const Factor& g, double alpha) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.values()[i] > alpha * g.values()[i]) return false;
    return true;
}

} // namespace

bool leq_alpha(const Valuation& phi, const Valuation& psi, double alpha) {
    if (phi.scope() != psi.scope())
        throw StructuralError("leq_alpha: valuations must share a scope");
    return leq_alpha_parts(phi.p(), psi.p(), alpha) && leq_alpha_parts(phi.u(), psi.u(), alpha);
}

bool alpha_equivalent(const Valuation& phi, const Valuation& psi, double alpha) {
    if (phi.scope() != psi.scope())
        throw StructuralError("alpha_equivalent: valuations must share a scope");
    if (!(alpha > 1.0)) throw InputError("alpha_equivalent: alpha must be > 1");
    const auto check = [alpha](const Factor& f, const Factor& g) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double a = f.values()[i], b = g.values()[i];
            if (a == b) continue;
            if (!(a > 0.0 && b > 0.0)) return false;
            if (log_bucket(a, alpha) != log_bucket(b, alpha)) return false;
        }
        return true;
    };
    return check(phi.p(), psi.p()) && check(phi.u(), psi.u());
}

ValuationSet coarsen(ValuationSet psi, double alpha) {
    if (!(alpha > 1.0)) throw InputError("coarsen: alpha must be > 1");
    std::map<std::vector<long long>, std::size_t> rep; // class signature -> member index
    for (std::size_t i = 0; i < psi.members.size(); ++i) {
        auto sig = signature(psi.members[i], alpha);
        auto [it, inserted] = rep.emplace(std::move(sig), i);
        if (!inserted && canonical_less(psi.members[i], psi.members[it->second]))
            it->second = i;
    }
    std::vector<Valuation> out;
    out.reserve(rep.size());
    for (const auto& [sig, idx] : rep) {
        (void)sig;
        out.push_back(std::move(psi.members[idx]));
    }
    std::stable_sort(out.begin(), out.end(), canonical_less);
    psi.members = std::move(out);
    return psi;
}

ValuationSet alpha_combine(const ValuationSet& a, const ValuationSet& b, double alpha) {
    return coarsen(set_combine(a, b), alpha);
}

SolveResult solve_approx(const Diagram& d, double epsilon, SolveOptions opts) {
    if (!(epsilon > 0.0)) throw InputError("epsilon must be > 0");
    opts.epsilon = epsilon;
    return solve(d, opts);
}

} // namespace limid
