#include <doctest.h>

#include "helpers.hpp"
#include "limid/errors.hpp"
#include "limid/eval.hpp"

using namespace limid;
using namespace limid::testing;

namespace {

// X0 -> X1 <- D1, X1 -> R : the one-round urn game built by hand.
Diagram urn1_by_hand() { return gen_urn(1, 1); }

Diagram chance_only() {
    return Diagram({{"X", VarKind::Chance, {"a", "b"}}}, {},
                   {{"X", Factor({"X"}, {2}, {0.4, 0.6})}}, {});
}

} // namespace

TEST_SUITE("diagram") {

TEST_CASE("construction rejects invariant violations with precise messages") {
    SUBCASE("chance variable with one state") {
        CHECK_THROWS_WITH_AS(
            Diagram({{"X", VarKind::Chance, {"only"}}}, {}, {{"X", Factor({"X"}, {1}, {1.0})}},
                    {}),
            doctest::Contains("at least 2 states"), InputError);
    }
    SUBCASE("duplicate variable ids") {
        CHECK_THROWS_WITH_AS(Diagram({{"X", VarKind::Value, {}}, {"X", VarKind::Value, {}}}, {},
                                     {}, {{"X", Factor::scalar(1.0)}}),
                             doctest::Contains("duplicate id"), InputError);
    }
    SUBCASE("value variable with states") {
        CHECK_THROWS_WITH_AS(Diagram({{"V", VarKind::Value, {"s"}}}, {}, {}, {}),
                             doctest::Contains("no states"), InputError);
    }
    SUBCASE("cycle") {
        CHECK_THROWS_WITH_AS(
            Diagram({{"A", VarKind::Chance, {"0", "1"}}, {"B", VarKind::Chance, {"0", "1"}}},
                    {{"A", "B"}, {"B", "A"}},
                    {{"A", Factor({"B", "A"}, {2, 2}, {1, 0, 0, 1})},
                     {"B", Factor({"A", "B"}, {2, 2}, {1, 0, 0, 1})}},
                    {}),
            doctest::Contains("cycle"), InputError);
    }
    SUBCASE("value node with a child") {
        CHECK_THROWS_WITH_AS(
            Diagram({{"V", VarKind::Value, {}}, {"X", VarKind::Chance, {"0", "1"}}},
                    {{"V", "X"}}, {{"X", Factor({"V", "X"}, {1, 2}, {0.5, 0.5})}},
                    {{"V", Factor::scalar(0.0)}}),
            doctest::Contains("value nodes have no children"), InputError);
    }
    SUBCASE("CPT over the wrong scope") {
        CHECK_THROWS_WITH_AS(
            Diagram({{"A", VarKind::Chance, {"0", "1"}}, {"B", VarKind::Chance, {"0", "1"}}},
                    {{"A", "B"}},
                    {{"A", Factor({"A"}, {2}, {0.5, 0.5})}, {"B", Factor({"B"}, {2}, {0.5, 0.5})}},
                    {}),
            doctest::Contains("scope does not match"), InputError);
    }
    SUBCASE("strict normalization violation names variable and configuration") {
        CHECK_THROWS_WITH_AS(
            Diagram({{"A", VarKind::Chance, {"a0", "a1"}}, {"B", VarKind::Chance, {"b0", "b1"}}},
                    {{"A", "B"}},
                    {{"A", Factor({"A"}, {2}, {0.5, 0.5})},
                     {"B", Factor({"A", "B"}, {2, 2}, {0.5, 0.5, 0.4, 0.5})}},
                    {}),
            doctest::Contains("(A=a1)"), InputError);
    }
    SUBCASE("the same tables pass when strict normalization is off") {
        CHECK_NOTHROW(
            Diagram({{"A", VarKind::Chance, {"a0", "a1"}}, {"B", VarKind::Chance, {"b0", "b1"}}},
                    {{"A", "B"}},
                    {{"A", Factor({"A"}, {2}, {0.5, 0.5})},
                     {"B", Factor({"A", "B"}, {2, 2}, {0.5, 0.5, 0.4, 0.5})}},
                    {}, false));
    }
}

TEST_CASE("policy_to_factor puts a single unit per parent configuration") {
    SUBCASE("parentless binary decision choosing its first state") {
        Diagram d({{"D", VarKind::Decision, {"add", "remove"}}, {"V", VarKind::Value, {}}},
                  {{"D", "V"}}, {}, {{"V", Factor({"D"}, {2}, {1.0, 0.0})}});
        Factor f = policy_to_factor(Policy{"D", {0}}, d);
        CHECK(f.scope() == std::vector<std::string>{"D"});
        CHECK(f.values() == std::vector<double>{1.0, 0.0});
    }
    SUBCASE("the (remove, add) policy of the second urn participant") {
        Diagram d = gen_urn(2, 2);
        // D2's parent is D1; policy: first plays add -> remove, remove -> add
        Factor f = policy_to_factor(Policy{"D2", {1, 0}}, d);
        REQUIRE(f.scope() == std::vector<std::string>{"D1", "D2"});
        CHECK(f.at({0, 1}) == 1.0); // add -> remove
        CHECK(f.at({1, 0}) == 1.0); // remove -> add
        CHECK(f.at({0, 0}) == 0.0);
        CHECK(f.at({1, 1}) == 0.0);
    }
    SUBCASE("ternary parent: exactly one unit per configuration") {
        Diagram d({{"P", VarKind::Chance, {"p0", "p1", "p2"}},
                   {"D", VarKind::Decision, {"x", "y"}},
                   {"V", VarKind::Value, {}}},
                  {{"P", "D"}, {"D", "V"}},
                  {{"P", Factor({"P"}, {3}, {0.2, 0.3, 0.5})}},
                  {{"V", Factor({"D"}, {2}, {0.0, 1.0})}});
        Factor f = policy_to_factor(Policy{"D", {1, 0, 1}}, d);
        int ones = 0;
        for (double v : f.values()) {
            CHECK((v == 0.0 || v == 1.0));
            if (v == 1.0) ++ones;
        }
        CHECK(ones == 3);
    }
}

TEST_CASE("joint distribution of a chance-only diagram is its CPT") {
    Diagram d = chance_only();
    Factor j = joint_distribution(d, Strategy{});
    CHECK(j.scope() == std::vector<std::string>{"X"});
    CHECK(j.values() == std::vector<double>{0.4, 0.6});
}

TEST_CASE("joint distribution of the one-round urn game, fixed policy") {
    Diagram d = urn1_by_hand();
    Strategy add;
    add.policies["D1"] = Policy{"D1", {0}};
    Factor j = joint_distribution(d, add);
    // scope [X0, D1, X1]; urn: add moves 0->1, 1->2, 2->2
    const int kAdd = 0, kRemove = 1;
    for (int x0 = 0; x0 < 3; ++x0)
        for (int x1 = 0; x1 < 3; ++x1) {
            const int want_add = std::min(x0 + 1, 2);
            CHECK(j.at({x0, kAdd, x1}) ==
                  doctest::Approx(x1 == want_add ? 1.0 / 3 : 0.0).epsilon(1e-12));
            CHECK(j.at({x0, kRemove, x1}) == 0.0);
        }
    // the joint of a strict diagram is a distribution
    CHECK(sum_marginal(j, {"X0", "D1", "X1"}).values()[0] ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("partition family: the all-d1 strategy walks the x trajectory") {
    Diagram d = gen_partition({1, 1}, true);
    Strategy s;
    s.policies["D1"] = Policy{"D1", {0}};
    s.policies["D2"] = Policy{"D2", {0}};
    Factor j = joint_distribution(d, s);
    // t_i = 0.5: mass of the all-x world is (1/3) * t_1 * t_2
    std::vector<int> world(j.scope().size(), 0);
    std::map<std::string, int> at;
    for (std::size_t i = 0; i < j.scope().size(); ++i) at[j.scope()[i]] = static_cast<int>(i);
    world[at["X0"]] = 0;
    world[at["X1"]] = 0;
    world[at["X2"]] = 0;
    world[at["D1"]] = 0;
    world[at["D2"]] = 0;
    CHECK(j.at(world) == doctest::Approx((1.0 / 3) * 0.25).epsilon(1e-12));
}

TEST_CASE("joint distribution requires a policy for every decision") {
    Diagram d = urn1_by_hand();
    CHECK_THROWS_AS(joint_distribution(d, Strategy{}), InputError);
}

TEST_CASE("expected utility of a constant diagram") {
    Diagram d({{"V", VarKind::Value, {}}}, {}, {}, {{"V", Factor::scalar(0.7)}});
    CHECK(expected_utility(d, Strategy{}) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("partition family: expected utility matches the closed form per strategy") {
    const std::vector<long long> numbers{3, 1, 2};
    Diagram d = gen_partition(numbers, true);
    const double a = 3.0;
    std::vector<double> t;
    for (long long x : numbers) t.push_back(std::exp2(-static_cast<double>(x) / a));
    StrategyStream stream(d);
    while (auto s = stream.next()) {
        double in = 1.0, out = 1.0;
        for (std::size_t i = 0; i < numbers.size(); ++i) {
            const auto& pol = s->policies.at("D" + std::to_string(i + 1));
            (pol.table[0] == 0 ? in : out) *= t[i];
        }
        const double want = 1.0 - (in + out) / 3.0;
        CHECK(expected_utility(d, *s) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("expected utility equals the naive double sum on random diagrams") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Diagram d = small_random_diagram(seed);
        StrategyStream stream(d, 100000);
        // check a handful of strategies per diagram
        int checked = 0;
        while (auto s = stream.next()) {
            CHECK(expected_utility(d, *s) ==
                  doctest::Approx(naive_expected_utility(d, *s)).epsilon(1e-9));
            if (++checked >= 5) break;
        }
    }
}

TEST_CASE("strategy counts multiply across decisions") {
    Diagram d = gen_urn(2, 2);
    // D1 sees X0 (3 configs), D2 sees D1 (2 configs): 2^3 * 2^2
    CHECK(strategy_count(d) == BigCount(32));
}

} // TEST_SUITE
