#include "limid/factor.hpp"

#include <algorithm>
#include <cmath>

#include "limid/errors.hpp"

namespace limid {

namespace {

std::size_t domain_size(const std::vector<int>& cards) {
    std::size_t n = 1;
    for (int c : cards) n *= static_cast<std::size_t>(c);
    return n;
}

// Strides of each scope position, last position having stride 1.
std::vector<std::size_t> strides_of(const std::vector<int>& cards) {
    std::vector<std::size_t> s(cards.size(), 1);
    for (int i = static_cast<int>(cards.size()) - 2; i >= 0; --i)
        s[i] = s[i + 1] * static_cast<std::size_t>(cards[i + 1]);
    return s;
}

} // namespace

Factor::Factor(std::vector<std::string> scope, std::vector<int> cards,
               std::vector<double> values)
    : scope_(std::move(scope)), cards_(std::move(cards)), values_(std::move(values)) {
    if (scope_.size() != cards_.size())
        throw StructuralError("factor: scope and cardinality lists differ in length");
    for (std::size_t i = 0; i < cards_.size(); ++i)
        if (cards_[i] < 1)
            throw StructuralError("factor: variable '" + scope_[i] + "' has cardinality < 1");
    for (std::size_t i = 0; i < scope_.size(); ++i)
        for (std::size_t j = i + 1; j < scope_.size(); ++j)
            if (scope_[i] == scope_[j])
                throw StructuralError("factor: duplicate scope variable '" + scope_[i] + "'");
    if (values_.size() != domain_size(cards_))
        throw StructuralError("factor: value count " + std::to_string(values_.size()) +
                              " does not match domain size " + std::to_string(domain_size(cards_)));
}

Factor Factor::scalar(double v) { return Factor({}, {}, {v}); }

Factor Factor::constant_like(const Factor& like, double v) {
    return Factor(like.scope_, like.cards_, std::vector<double>(like.size(), v));
}

Factor Factor::build(std::vector<std::string> scope, std::vector<int> cards,
                     const std::function<double(const std::vector<int>&)>& fn) {
    std::vector<double> vals(domain_size(cards));
    std::vector<int> a(cards.size(), 0);
    std::size_t idx = 0;
    do {
        vals[idx++] = fn(a);
    } while (next_assignment(a, cards));
    return Factor(std::move(scope), std::move(cards), std::move(vals));
}

bool Factor::has_var(const std::string& id) const {
    return std::find(scope_.begin(), scope_.end(), id) != scope_.end();
}

int Factor::card_of(const std::string& id) const {
    for (std::size_t i = 0; i < scope_.size(); ++i)
        if (scope_[i] == id) return cards_[i];
    return -1;
}

std::size_t Factor::index_of(const std::vector<int>& assignment) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < scope_.size(); ++i)
        idx = idx * static_cast<std::size_t>(cards_[i]) + static_cast<std::size_t>(assignment[i]);
    return idx;
}

bool Factor::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

bool Factor::all_nonnegative() const {
    for (double v : values_)
        if (!(v >= 0.0)) return false;
    return true;
}

bool next_assignment(std::vector<int>& assignment, const std::vector<int>& cards) {
    for (int d = static_cast<int>(cards.size()) - 1; d >= 0; --d) {
        if (++assignment[d] < cards[d]) return true;
        assignment[d] = 0;
    }
    return false;
}

namespace {

// Union scope, union cards, and per-union-position strides into f and g
// (0 when the variable is absent from the respective factor).
struct BinaryLayout {
    std::vector<std::string> scope;
    std::vector<int> cards;
    std::vector<std::size_t> f_stride, g_stride;
    std::size_t total;
};

BinaryLayout union_layout(const Factor& f, const Factor& g) {
    BinaryLayout L;
    L.scope = f.scope();
    L.cards = f.cards();
    for (std::size_t j = 0; j < g.scope().size(); ++j) {
        if (!f.has_var(g.scope()[j])) {
            L.scope.push_back(g.scope()[j]);
            L.cards.push_back(g.cards()[j]);
        } else if (f.card_of(g.scope()[j]) != g.cards()[j]) {
            throw StructuralError("factor operation: variable '" + g.scope()[j] +
                                  "' has mismatched state counts (" +
                                  std::to_string(f.card_of(g.scope()[j])) + " vs " +
                                  std::to_string(g.cards()[j]) + ")");
        }
    }
    const auto fs = strides_of(f.cards());
    const auto gs = strides_of(g.cards());
    L.f_stride.assign(L.scope.size(), 0);
    L.g_stride.assign(L.scope.size(), 0);
    for (std::size_t i = 0; i < L.scope.size(); ++i) {
        for (std::size_t k = 0; k < f.scope().size(); ++k)
            if (f.scope()[k] == L.scope[i]) L.f_stride[i] = fs[k];
        for (std::size_t k = 0; k < g.scope().size(); ++k)
            if (g.scope()[k] == L.scope[i]) L.g_stride[i] = gs[k];
    }
    L.total = domain_size(L.cards);
    return L;
}

template <typename Op>
Factor binary_op(const Factor& f, const Factor& g, Op op) {
    BinaryLayout L = union_layout(f, g);
    std::vector<double> out(L.total);
    std::vector<int> a(L.cards.size(), 0);
    std::size_t fi = 0, gi = 0;
    for (std::size_t idx = 0; idx < L.total; ++idx) {
        out[idx] = op(f.values()[fi], g.values()[gi]);
        for (int d = static_cast<int>(L.cards.size()) - 1; d >= 0; --d) {
            ++a[d];
            fi += L.f_stride[d];
            gi += L.g_stride[d];
            if (a[d] < L.cards[d]) break;
            fi -= L.f_stride[d] * static_cast<std::size_t>(L.cards[d]);
            gi -= L.g_stride[d] * static_cast<std::size_t>(L.cards[d]);
            a[d] = 0;
        }
    }
    return Factor(std::move(L.scope), std::move(L.cards), std::move(out));
}

} // namespace

Factor factor_product(const Factor& f, const Factor& g) {
    return binary_op(f, g, [](double x, double y) { return x * y; });
}

Factor factor_sum(const Factor& f, const Factor& g) {
    return binary_op(f, g, [](double x, double y) { return x + y; });
}

Factor sum_marginal(const Factor& f, const std::set<std::string>& y) {
    std::vector<std::string> out_scope;
    std::vector<int> out_cards;
    for (std::size_t i = 0; i < f.scope().size(); ++i) {
        if (!y.count(f.scope()[i])) {
            out_scope.push_back(f.scope()[i]);
            out_cards.push_back(f.cards()[i]);
        }
    }
    if (out_scope.size() == f.scope().size()) return f;

    const auto out_strides = strides_of(out_cards);
    // stride of each f position in the result (0 when eliminated)
    std::vector<std::size_t> r_stride(f.scope().size(), 0);
    for (std::size_t i = 0; i < f.scope().size(); ++i)
        for (std::size_t k = 0; k < out_scope.size(); ++k)
            if (out_scope[k] == f.scope()[i]) r_stride[i] = out_strides[k];

    std::vector<double> out(domain_size(out_cards), 0.0);
    std::vector<int> a(f.cards().size(), 0);
    std::size_t ri = 0;
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        out[ri] += f.values()[idx];
        for (int d = static_cast<int>(f.cards().size()) - 1; d >= 0; --d) {
            ++a[d];
            ri += r_stride[d];
            if (a[d] < f.cards()[d]) break;
            ri -= r_stride[d] * static_cast<std::size_t>(f.cards()[d]);
            a[d] = 0;
        }
    }
    return Factor(std::move(out_scope), std::move(out_cards), std::move(out));
}

} // namespace limid
