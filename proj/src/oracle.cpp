#include "limid/oracle.hpp"

#include <chrono>

#include "limid/errors.hpp"
#include "limid/eval.hpp"

namespace limid {

StrategyStream::StrategyStream(const Diagram& d, std::uint64_t cap) : diagram_(d) {
    total_ = strategy_count(d);
    if (total_ > BigCount(cap))
        throw ResourceError("strategy space has " + total_.str() +
                            " elements, above the enumeration cap of " + std::to_string(cap));
    for (const auto& did : d.decision_ids()) {
        decisions_.push_back(did);
        tables_.emplace_back(d.parent_config_count(did), 0);
        cards_.push_back(d.card(d.index_of(did)));
    }
}

std::optional<Strategy> StrategyStream::next() {
    if (done_) return std::nullopt;
    if (started_) {
        // advance the odometer: last decision's last table entry is fastest
        int di = static_cast<int>(decisions_.size()) - 1;
        for (; di >= 0; --di) {
            auto& table = tables_[di];
            int k = static_cast<int>(table.size()) - 1;
            while (k >= 0 && ++table[k] == cards_[di]) table[k--] = 0;
            if (k >= 0) break;
        }
        if (di < 0) {
            done_ = true;
            return std::nullopt;
        }
    }
    started_ = true;
    Strategy s;
    for (std::size_t i = 0; i < decisions_.size(); ++i)
        s.policies[decisions_[i]] = Policy{decisions_[i], tables_[i]};
    return s;
}

SolveResult brute_force_meu(const Diagram& d, std::uint64_t cap) {
    const auto t0 = std::chrono::steady_clock::now();
    StrategyStream stream(d, cap);
    SolveResult best;
    best.stats.strategy_count = stream.total();
    bool have = false;
    while (auto s = stream.next()) {
        const double eu = expected_utility(d, *s);
        if (!have || eu > best.meu) {
            best.meu = eu;
            best.strategy = std::move(*s);
            have = true;
        }
    }
    if (!have) {
        // no decisions: the empty strategy
        best.meu = expected_utility(d, Strategy{});
    }
    const auto t1 = std::chrono::steady_clock::now();
    best.stats.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return best;
}

} // namespace limid
