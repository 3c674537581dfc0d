#include "limid/valuation.hpp"

#include <algorithm>

#include "limid/errors.hpp"

namespace limid {

Valuation::Valuation(Factor p, Factor u, Trace trace)
    : p_(std::move(p)), u_(std::move(u)), trace_(std::move(trace)) {
    if (p_.scope() != u_.scope() || p_.cards() != u_.cards())
        throw StructuralError("valuation: probability and utility parts must share scope");
    if (!p_.all_nonnegative() || !u_.all_nonnegative())
        throw StructuralError("valuation: parts must be entrywise nonnegative");
}

namespace {

// Strides of each scope position, last fastest.
std::vector<std::size_t> strides_of(const std::vector<int>& cards) {
    std::vector<std::size_t> s(cards.size(), 1);
    for (int i = static_cast<int>(cards.size()) - 2; i >= 0; --i)
        s[i] = s[i + 1] * static_cast<std::size_t>(cards[i + 1]);
    return s;
}

} // namespace

Valuation combine(const Valuation& phi, const Valuation& psi) {
    // One pass over the union domain computing (pq, pv + qu) keeps both
    // parts on identical indexing.
    const Factor& p = phi.p();
    const Factor& q = psi.p();
    std::vector<std::string> scope = p.scope();
    std::vector<int> cards = p.cards();
    for (std::size_t j = 0; j < q.scope().size(); ++j) {
        if (!p.has_var(q.scope()[j])) {
            scope.push_back(q.scope()[j]);
            cards.push_back(q.cards()[j]);
        } else if (p.card_of(q.scope()[j]) != q.cards()[j]) {
            throw StructuralError("combine: variable '" + q.scope()[j] +
                                  "' has mismatched state counts");
        }
    }
    const auto ls = strides_of(p.cards());
    const auto rs = strides_of(q.cards());
    std::vector<std::size_t> lstride(scope.size(), 0), rstride(scope.size(), 0);
    for (std::size_t i = 0; i < scope.size(); ++i) {
        for (std::size_t k = 0; k < p.scope().size(); ++k)
            if (p.scope()[k] == scope[i]) lstride[i] = ls[k];
        for (std::size_t k = 0; k < q.scope().size(); ++k)
            if (q.scope()[k] == scope[i]) rstride[i] = rs[k];
    }
    std::size_t total = 1;
    for (int c : cards) total *= static_cast<std::size_t>(c);

    std::vector<double> out_p(total), out_u(total);
    std::vector<int> a(cards.size(), 0);
    std::size_t li = 0, ri = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        const double pv = phi.p().values()[li];
        const double uv = phi.u().values()[li];
        const double qv = psi.p().values()[ri];
        const double vv = psi.u().values()[ri];
        out_p[idx] = pv * qv;
        out_u[idx] = pv * vv + qv * uv;
        for (int d = static_cast<int>(cards.size()) - 1; d >= 0; --d) {
            ++a[d];
            li += lstride[d];
            ri += rstride[d];
            if (a[d] < cards[d]) break;
            li -= lstride[d] * static_cast<std::size_t>(cards[d]);
            ri -= rstride[d] * static_cast<std::size_t>(cards[d]);
            a[d] = 0;
        }
    }
    Valuation::Trace trace = phi.trace();
    trace.insert(trace.end(), psi.trace().begin(), psi.trace().end());
    Factor pf(scope, cards, std::move(out_p));
    Factor uf(std::move(scope), std::move(cards), std::move(out_u));
    return Valuation(std::move(pf), std::move(uf), std::move(trace));
}

Valuation eliminate(const Valuation& phi, const std::set<std::string>& z) {
    return Valuation(sum_marginal(phi.p(), z), sum_marginal(phi.u(), z), phi.trace());
}

namespace {

// -1: a's tables lexicographically below b's; 0: equal; 1: above.
int table_compare(const Valuation& a, const Valuation& b) {
    const auto& ap = a.p().values();
    const auto& bp = b.p().values();
    for (std::size_t i = 0; i < ap.size(); ++i) {
        if (ap[i] < bp[i]) return -1;
        if (ap[i] > bp[i]) return 1;
    }
    const auto& au = a.u().values();
    const auto& bu = b.u().values();
    for (std::size_t i = 0; i < au.size(); ++i) {
        if (au[i] < bu[i]) return -1;
        if (au[i] > bu[i]) return 1;
    }
    return 0;
}

bool same_scope_set(const Valuation& a, const Valuation& b) {
    if (a.scope().size() != b.scope().size()) return false;
    std::vector<std::string> x = a.scope(), y = b.scope();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

// Entrywise psi >= phi on identically ordered scopes.
bool dominates_aligned(const Valuation& psi, const Valuation& phi) {
    const auto& q = psi.p().values();
    const auto& p = phi.p().values();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > q[i]) return false;
    const auto& v = psi.u().values();
    const auto& u = phi.u().values();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > v[i]) return false;
    return true;
}

// Reorders phi's tables onto the scope order of `ref`.
Valuation align_to(const Valuation& phi, const Valuation& ref) {
    const auto& scope = ref.scope();
    const auto& cards = ref.p().cards();
    const auto src_strides = strides_of(phi.p().cards());
    std::vector<std::size_t> stride(scope.size(), 0);
    for (std::size_t i = 0; i < scope.size(); ++i)
        for (std::size_t k = 0; k < phi.scope().size(); ++k)
            if (phi.scope()[k] == scope[i]) stride[i] = src_strides[k];
    std::size_t total = phi.p().size();
    std::vector<double> out_p(total), out_u(total);
    std::vector<int> a(cards.size(), 0);
    std::size_t si = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        out_p[idx] = phi.p().values()[si];
        out_u[idx] = phi.u().values()[si];
        for (int d = static_cast<int>(cards.size()) - 1; d >= 0; --d) {
            ++a[d];
            si += stride[d];
            if (a[d] < cards[d]) break;
            si -= stride[d] * static_cast<std::size_t>(cards[d]);
            a[d] = 0;
        }
    }
    return Valuation(Factor(scope, cards, std::move(out_p)),
                     Factor(scope, cards, std::move(out_u)), phi.trace());
}

} // namespace

bool dominates(const Valuation& psi, const Valuation& phi) {
    if (psi.scope() == phi.scope()) return dominates_aligned(psi, phi);
    if (!same_scope_set(psi, phi))
        throw StructuralError("dominates: valuations have different scopes");
    return dominates_aligned(psi, align_to(phi, psi));
}

bool canonical_less(const Valuation& a, const Valuation& b) {
    return table_compare(a, b) < 0;
}

ValuationSet make_set(std::vector<Valuation> members) {
    ValuationSet s;
    if (!members.empty()) s.scope = members.front().scope();
    for (const auto& m : members)
        if (m.scope() != s.scope)
            throw StructuralError("valuation set: members must share one scope");
    s.members = std::move(members);
    return s;
}

ValuationSet maximal_set(ValuationSet psi) {
    auto& m = psi.members;
    std::stable_sort(m.begin(), m.end(), canonical_less);
    std::vector<bool> keep(m.size(), true);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!keep[i]) continue;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j == i || !keep[j]) continue;
            if (!dominates_aligned(m[j], m[i])) continue;
            if (dominates_aligned(m[i], m[j])) {
                // equal tables: the earlier canonical position survives
                if (j < i) { keep[i] = false; break; }
            } else {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<Valuation> out;
    out.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        if (keep[i]) out.push_back(std::move(m[i]));
    psi.members = std::move(out);
    return psi;
}

ValuationSet set_combine(const ValuationSet& a, const ValuationSet& b) {
    std::vector<Valuation> out;
    out.reserve(a.members.size() * b.members.size());
    for (const auto& x : a.members)
        for (const auto& y : b.members) out.push_back(combine(x, y));
    return make_set(std::move(out));
}

ValuationSet set_eliminate(const ValuationSet& a, const std::set<std::string>& z) {
    std::vector<Valuation> out;
    out.reserve(a.members.size());
    for (const auto& x : a.members) out.push_back(eliminate(x, z));
    return make_set(std::move(out));
}

} // namespace limid
