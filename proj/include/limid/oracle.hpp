#pragma once

#include <cstdint>
#include <optional>

#include "limid/diagram.hpp"
#include "limid/lve.hpp"

namespace limid {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1000000;

/// Streams every strategy exactly once, in lexicographic order (decisions in
/// declaration order, policy tables as odometer digits). The constructor
/// throws ResourceError when the total strategy count exceeds `cap`.
class StrategyStream {
public:
    explicit StrategyStream(const Diagram& d, std::uint64_t cap = kDefaultEnumerationCap);

    /// The next strategy, or nullopt when exhausted.
    std::optional<Strategy> next();

    const BigCount& total() const { return total_; }

private:
    const Diagram& diagram_;
    std::vector<std::string> decisions_;
    std::vector<std::vector<int>> tables_;
    std::vector<int> cards_;
    BigCount total_;
    bool done_ = false;
    bool started_ = false;
};

/// Exhaustive maximization: evaluates every strategy with fixed-strategy
/// variable elimination and keeps the first maximizer in enumeration order.
SolveResult brute_force_meu(const Diagram& d, std::uint64_t cap = kDefaultEnumerationCap);

} // namespace limid
