#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace limid {

/// A real-valued table over an ordered list of discrete variables.
///
/// Indexing is row-major with the LAST scope variable varying fastest:
/// the linear index of assignment (a_0, ..., a_{n-1}) is
/// ((a_0 * c_1 + a_1) * c_2 + a_2) * ... . A factor with empty scope holds a
/// single value and is identified with that real number.
class Factor {
public:
    /// Empty-scope factor with value 0.
    Factor() : values_{0.0} {}

    Factor(std::vector<std::string> scope, std::vector<int> cards,
           std::vector<double> values);

    /// Empty-scope factor holding `v`.
    static Factor scalar(double v);

    /// Factor with the same scope/cards as `like`, filled with `v`.
    static Factor constant_like(const Factor& like, double v);

    /// Build a table by evaluating `fn` at every assignment of `scope`.
    static Factor build(std::vector<std::string> scope, std::vector<int> cards,
                        const std::function<double(const std::vector<int>&)>& fn);

    const std::vector<std::string>& scope() const { return scope_; }
    const std::vector<int>& cards() const { return cards_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty_scope() const { return scope_.empty(); }

    bool has_var(const std::string& id) const;
    int card_of(const std::string& id) const; // -1 when absent

    /// Linear index of a full-scope assignment.
    std::size_t index_of(const std::vector<int>& assignment) const;
    double at(const std::vector<int>& assignment) const { return values_[index_of(assignment)]; }

    bool all_finite() const;
    bool all_nonnegative() const;

private:
    std::vector<std::string> scope_;
    std::vector<int> cards_;
    std::vector<double> values_;
};

/// (fg)(w) = f(w projected to f's scope) * g(w projected to g's scope).
/// Result scope is f's scope followed by g's variables not in f.
/// Throws StructuralError when a shared variable has mismatched state counts.
Factor factor_product(const Factor& f, const Factor& g);

/// (f+g)(w) = f(w^) + g(w^), same scope convention as factor_product.
Factor factor_sum(const Factor& f, const Factor& g);

/// Sum-marginal: eliminates the variables in y, returning a factor over
/// scope \ y. Variables in y not present in the scope are ignored.
Factor sum_marginal(const Factor& f, const std::set<std::string>& y);

/// Advances `assignment` (odometer over `cards`, last position fastest).
/// Returns false after the last assignment wraps to all zeros.
bool next_assignment(std::vector<int>& assignment, const std::vector<int>& cards);

} // namespace limid
