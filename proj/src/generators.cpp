#include "limid/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "limid/errors.hpp"
#include "limid/ordering.hpp"

namespace limid {

namespace {

// Deterministic draws on top of mt19937_64; the standard distributions are
// implementation-defined, these are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform_pos() { // (0, 1]
        return 1.0 - uniform01();
    }
    std::uint64_t below(std::uint64_t n) { // [0, n), unbiased
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }
    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 eng_;
};

std::vector<std::string> numbered_states(int n, const std::string& prefix = "s") {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

// Parents of `id` in declaration order, straight from (vars, arcs).
std::vector<std::string> decl_parents(const std::vector<Variable>& vars,
                                      const std::vector<std::pair<std::string, std::string>>& arcs,
                                      const std::string& id) {
    std::vector<std::string> out;
    for (const auto& v : vars)
        for (const auto& [p, c] : arcs)
            if (p == v.id && c == id) out.push_back(v.id);
    return out;
}

std::vector<int> cards_of(const std::vector<Variable>& vars, const std::vector<std::string>& ids) {
    std::vector<int> out;
    for (const auto& id : ids)
        for (const auto& v : vars)
            if (v.id == id) out.push_back(static_cast<int>(v.states.size()));
    return out;
}

std::size_t family_domain(const std::vector<Variable>& vars,
                          const std::vector<std::pair<std::string, std::string>>& arcs,
                          const std::string& id) {
    std::size_t n = 1;
    for (const auto& v : vars)
        if (v.id == id && v.kind != VarKind::Value) n *= v.states.size();
    for (const auto& [p, c] : arcs)
        if (c == id)
            for (const auto& v : vars)
                if (v.id == p) n *= v.states.size();
    return n;
}

bool creates_cycle(const std::vector<std::pair<std::string, std::string>>& arcs,
                   const std::string& from, const std::string& to) {
    // path to -> ... -> from?
    std::set<std::string> frontier{to}, seen{to};
    while (!frontier.empty()) {
        std::set<std::string> nxt;
        for (const auto& [p, c] : arcs)
            if (frontier.count(p) && !seen.count(c)) {
                if (c == from) return true;
                nxt.insert(c);
                seen.insert(c);
            }
        frontier = std::move(nxt);
    }
    return false;
}

} // namespace

Diagram gen_random(const RandomParams& params) {
    if (params.d < 1 || params.c < 1) throw InputError("gen_random: d and c must be >= 1");
    if (params.omega_d < 4 || params.omega_c < 4)
        throw InputError("gen_random: domain bounds must be >= 4");
    if (params.min_states < 2 || params.max_states < params.min_states)
        throw InputError("gen_random: bad state range");
    Rng rng(params.seed);

    const int v = params.d + 2;
    std::vector<Variable> vars;
    for (int i = 0; i < params.c; ++i)
        vars.push_back({"c" + std::to_string(i + 1), VarKind::Chance,
                        numbered_states(rng.range(params.min_states, params.max_states))});
    for (int i = 0; i < params.d; ++i)
        vars.push_back({"d" + std::to_string(i + 1), VarKind::Decision,
                        numbered_states(rng.range(params.min_states, params.max_states))});
    for (int i = 0; i < v; ++i)
        vars.push_back({"v" + std::to_string(i + 1), VarKind::Value, {}});

    std::vector<std::pair<std::string, std::string>> arcs;
    auto has_children = [&arcs](const std::string& id) {
        for (const auto& [p, c] : arcs)
            if (p == id) { (void)c; return true; }
        return false;
    };
    auto has_parents = [&arcs](const std::string& id) {
        for (const auto& [p, c] : arcs)
            if (c == id) { (void)p; return true; }
        return false;
    };

    // every decision gets a value child before general wiring
    for (;;) {
        std::vector<std::pair<std::string, std::string>> candidates;
        for (const auto& dv : vars) {
            if (dv.kind != VarKind::Decision || has_children(dv.id)) continue;
            for (const auto& vv : vars)
                if (vv.kind == VarKind::Value && !has_parents(vv.id))
                    candidates.emplace_back(dv.id, vv.id);
        }
        if (candidates.empty()) break;
        arcs.push_back(candidates[rng.below(candidates.size())]);
    }

    // general arcs: uniform over feasible pairs, re-drawn each round; the
    // (expensive) width test runs lazily with pool removal, which keeps the
    // accepted arc uniform over the truly feasible set
    for (;;) {
        std::vector<std::pair<std::string, std::string>> pool;
        for (const auto& a : vars) {
            if (a.kind == VarKind::Value) continue;
            for (const auto& b : vars) {
                if (a.id == b.id) continue;
                if (std::find(arcs.begin(), arcs.end(),
                              std::make_pair(a.id, b.id)) != arcs.end())
                    continue;
                const std::size_t bound = b.kind == VarKind::Decision
                                              ? static_cast<std::size_t>(params.omega_d)
                                              : static_cast<std::size_t>(params.omega_c);
                if (family_domain(vars, arcs, b.id) * a.states.size() > bound) continue;
                if (creates_cycle(arcs, a.id, b.id)) continue;
                pool.emplace_back(a.id, b.id);
            }
        }
        bool added = false;
        while (!pool.empty()) {
            const std::size_t pick = rng.below(pool.size());
            auto cand = pool[pick];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
            auto trial = arcs;
            trial.push_back(cand);
            if (greedy_width_estimate(vars, trial) <= params.width_cap) {
                arcs.push_back(cand);
                added = true;
                break;
            }
        }
        if (!added) break;
    }

    // quantification: CPT columns are normalized uniform-(0,1] draws,
    // utilities uniform [0,1]; declaration order for reproducibility
    std::map<std::string, Factor> cpts, utils;
    for (const auto& var : vars) {
        if (var.kind == VarKind::Chance) {
            std::vector<std::string> scope = decl_parents(vars, arcs, var.id);
            std::vector<int> cards = cards_of(vars, scope);
            scope.push_back(var.id);
            const int k = static_cast<int>(var.states.size());
            cards.push_back(k);
            std::size_t configs = 1;
            for (std::size_t ci = 0; ci + 1 < cards.size(); ++ci)
                configs *= static_cast<std::size_t>(cards[ci]);
            std::vector<double> vals(configs * static_cast<std::size_t>(k));
            for (std::size_t cfg = 0; cfg < configs; ++cfg) {
                double s = 0.0;
                for (int x = 0; x < k; ++x) {
                    vals[cfg * k + x] = rng.uniform_pos();
                    s += vals[cfg * k + x];
                }
                for (int x = 0; x < k; ++x) vals[cfg * k + x] /= s;
            }
            cpts.emplace(var.id, Factor(std::move(scope), std::move(cards), std::move(vals)));
        } else if (var.kind == VarKind::Value) {
            std::vector<std::string> scope = decl_parents(vars, arcs, var.id);
            std::vector<int> cards = cards_of(vars, scope);
            std::size_t n = 1;
            for (int c : cards) n *= static_cast<std::size_t>(c);
            std::vector<double> vals(n);
            for (auto& x : vals) x = rng.uniform01();
            utils.emplace(var.id, Factor(std::move(scope), std::move(cards), std::move(vals)));
        }
    }
    return Diagram(std::move(vars), std::move(arcs), std::move(cpts), std::move(utils), true);
}

namespace {

// Urn dynamics: add caps at two balls, removing from an empty urn puts two.
int urn_next(int balls, bool add) {
    if (add) return std::min(balls + 1, 2);
    return balls == 0 ? 2 : balls - 1;
}

} // namespace

Diagram gen_urn(int n, int variant) {
    if (n < 1) throw InputError("gen_urn: n must be >= 1");
    if (variant != 1 && variant != 2 && variant != 5)
        throw InputError("gen_urn: variant must be 1, 2 or 5");

    const std::vector<std::string> urn_states{"0", "1", "2"};
    const std::vector<std::string> acts{"add", "remove"};

    std::vector<Variable> vars;
    vars.push_back({"X0", VarKind::Chance, urn_states});
    for (int i = 1; i <= n; ++i) {
        vars.push_back({"D" + std::to_string(i), VarKind::Decision, acts});
        vars.push_back({"X" + std::to_string(i), VarKind::Chance, urn_states});
    }
    vars.push_back({"R", VarKind::Value, {}});

    std::vector<std::pair<std::string, std::string>> arcs;
    for (int i = 1; i <= n; ++i) {
        arcs.emplace_back("D" + std::to_string(i), "X" + std::to_string(i));
        arcs.emplace_back("X" + std::to_string(i - 1), "X" + std::to_string(i));
    }
    arcs.emplace_back("X" + std::to_string(n), "R");
    if (variant >= 2) {
        arcs.emplace_back("X0", "D1");
        for (int i = 2; i <= n; ++i)
            arcs.emplace_back("D" + std::to_string(i - 1), "D" + std::to_string(i));
    }
    if (variant == 5)
        for (int i = 2; i <= n; ++i)
            arcs.emplace_back("X" + std::to_string(i - 1), "D" + std::to_string(i));

    std::map<std::string, Factor> cpts, utils;
    cpts.emplace("X0", Factor({"X0"}, {3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
    for (int i = 1; i <= n; ++i) {
        const std::string xid = "X" + std::to_string(i);
        std::vector<std::string> scope = decl_parents(vars, arcs, xid);
        std::vector<int> cards = cards_of(vars, scope);
        scope.push_back(xid);
        cards.push_back(3);
        std::size_t prev_at = 0, act_at = 0;
        for (std::size_t k = 0; k < scope.size(); ++k) {
            if (scope[k] == "X" + std::to_string(i - 1)) prev_at = k;
            if (scope[k] == "D" + std::to_string(i)) act_at = k;
        }
        const std::size_t x_at = scope.size() - 1;
        cpts.emplace(xid, Factor::build(scope, cards, [&](const std::vector<int>& a) {
                         return a[x_at] == urn_next(a[prev_at], a[act_at] == 0) ? 1.0 : 0.0;
                     }));
    }
    utils.emplace("R", Factor({"X" + std::to_string(n)}, {3}, {1.0, 0.0, 0.0}));
    return Diagram(std::move(vars), std::move(arcs), std::move(cpts), std::move(utils), true);
}

Diagram gen_partition(const std::vector<long long>& numbers, bool idealized) {
    if (numbers.empty()) throw InputError("gen_partition: need at least one number");
    for (long long a : numbers)
        if (a <= 0) throw InputError("gen_partition: numbers must be positive");
    const int n = static_cast<int>(numbers.size());

    double total = 0.0;
    long long bits = 0;
    for (long long x : numbers) {
        total += static_cast<double>(x);
        long long len = 0, y = x;
        while (y > 0) { ++len; y >>= 1; }
        bits += std::max<long long>(1, len);
    }
    const double a = total / 2.0;

    std::vector<double> t(numbers.size());
    for (std::size_t i = 0; i < numbers.size(); ++i) {
        t[i] = std::exp2(-static_cast<double>(numbers[i]) / a);
        if (!idealized) {
            const long long prec = 6 * bits + 3;
            if (prec <= 52) // round up to `prec` fractional bits
                t[i] = std::ldexp(std::ceil(std::ldexp(t[i], static_cast<int>(prec))),
                                  -static_cast<int>(prec));
        }
    }

    const std::vector<std::string> chain_states{"x", "y", "z"};
    const std::vector<std::string> acts{"d1", "d2"};
    std::vector<Variable> vars;
    vars.push_back({"X0", VarKind::Chance, chain_states});
    for (int i = 1; i <= n; ++i) {
        vars.push_back({"D" + std::to_string(i), VarKind::Decision, acts});
        vars.push_back({"X" + std::to_string(i), VarKind::Chance, chain_states});
    }
    vars.push_back({"R", VarKind::Value, {}});

    std::vector<std::pair<std::string, std::string>> arcs;
    for (int i = 1; i <= n; ++i) {
        arcs.emplace_back("D" + std::to_string(i), "X" + std::to_string(i));
        arcs.emplace_back("X" + std::to_string(i - 1), "X" + std::to_string(i));
    }
    arcs.emplace_back("X" + std::to_string(n), "R");

    std::map<std::string, Factor> cpts, utils;
    cpts.emplace("X0", Factor({"X0"}, {3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
    for (int i = 1; i <= n; ++i) {
        const std::string xid = "X" + std::to_string(i);
        const std::string prev = "X" + std::to_string(i - 1);
        const std::string did = "D" + std::to_string(i);
        const double ti = t[static_cast<std::size_t>(i - 1)];
        // scope [X_{i-1}, D_i, X_i]; the six columns over (prev, action)
        const auto col = [ti](int prev_state, int act) -> std::vector<double> {
            if (prev_state == 0) // from x
                return act == 0 ? std::vector<double>{ti, 0.0, 1.0 - ti}
                                : std::vector<double>{1.0, 0.0, 0.0};
            if (prev_state == 1) // from y
                return act == 0 ? std::vector<double>{0.0, 1.0, 0.0}
                                : std::vector<double>{0.0, ti, 1.0 - ti};
            return {0.0, 0.0, 1.0}; // from z, absorbing
        };
        std::vector<double> vals;
        for (int ps = 0; ps < 3; ++ps)
            for (int act = 0; act < 2; ++act) {
                const auto c = col(ps, act);
                vals.insert(vals.end(), c.begin(), c.end());
            }
        cpts.emplace(xid, Factor({prev, did, xid}, {3, 2, 3}, std::move(vals)));
    }
    utils.emplace("R", Factor({"X" + std::to_string(n)}, {3}, {0.0, 0.0, 1.0}));
    return Diagram(std::move(vars), std::move(arcs), std::move(cpts), std::move(utils), true);
}

namespace {

bool literal_satisfied(int literal, int truth) {
    return literal > 0 ? truth == 1 : truth == 0;
}

bool clause_satisfied_by(const std::vector<int>& clause, int var /*1-based*/, int truth) {
    for (int lit : clause)
        if (std::abs(lit) == var && literal_satisfied(lit, truth)) return true;
    return false;
}

} // namespace

Diagram gen_sat(const Cnf& cnf_in, int q) {
    if (q < 1) throw InputError("gen_sat: q must be >= 1");
    if (cnf_in.clauses.empty()) throw InputError("gen_sat: empty clause set");
    for (const auto& cl : cnf_in.clauses)
        for (int lit : cl)
            if (lit == 0 || std::abs(lit) > cnf_in.var_count)
                throw InputError("gen_sat: literal out of range");

    // a single clause would leave the selector with one state; duplicating
    // it keeps SAT(s)/m intact for every strategy
    Cnf cnf = cnf_in;
    if (cnf.clauses.size() == 1) cnf.clauses.push_back(cnf.clauses[0]);

    const int n = cnf.var_count;
    const int m = static_cast<int>(cnf.clauses.size());
    const std::vector<std::string> bits{"0", "1"};

    std::vector<std::string> sel_states; // 1..m
    for (int k = 1; k <= m; ++k) sel_states.push_back(std::to_string(k));
    std::vector<std::string> track_states; // 0..m
    for (int k = 0; k <= m; ++k) track_states.push_back(std::to_string(k));

    auto sid = [](int i, int j) { return "s" + std::to_string(i) + "r" + std::to_string(j); };
    auto did = [](int i, int j) { return "d" + std::to_string(i) + "r" + std::to_string(j); };
    auto bid = [](int j) { return "b" + std::to_string(j); };

    std::vector<Variable> vars;
    std::vector<std::pair<std::string, std::string>> arcs;
    for (int j = 1; j <= q; ++j) {
        vars.push_back({sid(0, j), VarKind::Chance, sel_states});
        for (int i = 1; i <= n; ++i) {
            vars.push_back({did(i, j), VarKind::Decision, bits});
            vars.push_back({sid(i, j), VarKind::Chance, track_states});
            arcs.emplace_back(sid(i - 1, j), sid(i, j));
            arcs.emplace_back(did(i, j), sid(i, j));
        }
        vars.push_back({bid(j), VarKind::Chance, bits});
        arcs.emplace_back(sid(n, j), bid(j));
        if (j > 1) arcs.emplace_back(bid(j - 1), bid(j));
    }
    vars.push_back({"u", VarKind::Value, {}});
    arcs.emplace_back(bid(q), "u");

    std::map<std::string, Factor> cpts, utils;
    for (int j = 1; j <= q; ++j) {
        cpts.emplace(sid(0, j),
                     Factor({sid(0, j)}, {m}, std::vector<double>(m, 1.0 / m)));
        for (int i = 1; i <= n; ++i) {
            std::vector<std::string> scope = decl_parents(vars, arcs, sid(i, j));
            std::vector<int> cards = cards_of(vars, scope);
            scope.push_back(sid(i, j));
            cards.push_back(m + 1);
            std::size_t prev_at = 0, d_at = 0;
            for (std::size_t k = 0; k < scope.size(); ++k) {
                if (scope[k] == sid(i - 1, j)) prev_at = k;
                if (scope[k] == did(i, j)) d_at = k;
            }
            const std::size_t x_at = scope.size() - 1;
            // the selector S_0 has states 1..m (value v means clause v+1);
            // downstream trackers have states 0..m
            const bool prev_is_selector = (i == 1);
            cpts.emplace(
                sid(i, j), Factor::build(scope, cards, [&](const std::vector<int>& a) {
                    const int prev = prev_is_selector ? a[prev_at] + 1 : a[prev_at];
                    const int cur = a[x_at];
                    const int truth = a[d_at];
                    if (prev == 0) return cur == 0 ? 1.0 : 0.0;
                    const bool sat = clause_satisfied_by(
                        cnf.clauses[static_cast<std::size_t>(prev - 1)], i, truth);
                    if (sat) return cur == 0 ? 1.0 : 0.0;
                    return cur == prev ? 1.0 : 0.0;
                }));
        }
        // b_j = b_{j-1} AND (s_n == 0); b_0 is taken as 1
        std::vector<std::string> scope = decl_parents(vars, arcs, bid(j));
        std::vector<int> cards = cards_of(vars, scope);
        scope.push_back(bid(j));
        cards.push_back(2);
        std::size_t s_at = 0, bprev_at = 0;
        for (std::size_t k = 0; k < scope.size(); ++k) {
            if (scope[k] == sid(n, j)) s_at = k;
            if (j > 1 && scope[k] == bid(j - 1)) bprev_at = k;
        }
        const std::size_t b_at = scope.size() - 1;
        cpts.emplace(bid(j), Factor::build(scope, cards, [&](const std::vector<int>& a) {
                         const int bprev = j > 1 ? a[bprev_at] : 1;
                         const int want = a[s_at] == 0 ? bprev : 0;
                         return a[b_at] == want ? 1.0 : 0.0;
                     }));
    }
    utils.emplace("u", Factor({bid(q)}, {2}, {0.0, 1.0}));
    return Diagram(std::move(vars), std::move(arcs), std::move(cpts), std::move(utils), true);
}

} // namespace limid
