#include <doctest.h>

#include "helpers.hpp"
#include "limid/errors.hpp"
#include "limid/factor.hpp"

using namespace limid;
using namespace limid::testing;

TEST_SUITE("factor") {

TEST_CASE("product with the empty-scope unit leaves a factor unchanged") {
    Factor f({"X"}, {3}, {0.1, 0.2, 0.7});
    Factor out = factor_product(f, Factor::scalar(1.0));
    CHECK(out.scope() == f.scope());
    CHECK(out.values() == f.values());
}

TEST_CASE("scalar product: (0.3) * (0.5) = (0.15)") {
    Factor out = factor_product(Factor::scalar(0.3), Factor::scalar(0.5));
    CHECK(out.scope().empty());
    CHECK(out.values()[0] == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("product over a shared binary variable matches per-assignment products") {
    TestRng rng(101);
    Factor f = random_factor(rng, {"X", "Y"}, {2, 2});
    Factor g = random_factor(rng, {"X", "Z"}, {2, 2});
    Factor out = factor_product(f, g);
    REQUIRE(out.scope() == std::vector<std::string>{"X", "Y", "Z"});
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                CHECK(out.at({x, y, z}) ==
                      doctest::Approx(f.at({x, y}) * g.at({x, z})).epsilon(1e-12));
}

TEST_CASE("product rejects mismatched state counts") {
    Factor f({"X"}, {2}, {0.5, 0.5});
    Factor g({"X"}, {3}, {0.2, 0.3, 0.5});
    CHECK_THROWS_AS(factor_product(f, g), StructuralError);
}

TEST_CASE("sum with zero is the identity") {
    Factor f({"X"}, {2}, {0.25, 0.75});
    Factor out = factor_sum(f, Factor::scalar(0.0));
    CHECK(out.values() == f.values());
}

TEST_CASE("scalar sum: 0.2 + 0.3 = 0.5") {
    CHECK(factor_sum(Factor::scalar(0.2), Factor::scalar(0.3)).values()[0] ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sum over overlapping scopes matches per-assignment enumeration") {
    TestRng rng(202);
    Factor f = random_factor(rng, {"A", "B"}, {2, 3});
    Factor g = random_factor(rng, {"B", "C"}, {3, 2});
    Factor out = factor_sum(f, g);
    REQUIRE(out.scope() == std::vector<std::string>{"A", "B", "C"});
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                CHECK(out.at({a, b, c}) ==
                      doctest::Approx(f.at({a, b}) + g.at({b, c})).epsilon(1e-12));
}

TEST_CASE("marginalizing a normalized parentless CPT gives 1") {
    Factor p({"X"}, {4}, {0.1, 0.2, 0.3, 0.4});
    Factor out = sum_marginal(p, {"X"});
    REQUIRE(out.scope().empty());
    CHECK(out.values()[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("marginalizing nothing returns the factor unchanged") {
    TestRng rng(303);
    Factor f = random_factor(rng, {"X", "Y"}, {2, 2});
    Factor out = sum_marginal(f, {});
    CHECK(out.values() == f.values());
    Factor out2 = sum_marginal(f, {"Q"}); // disjoint variable
    CHECK(out2.values() == f.values());
}

TEST_CASE("marginal over a ternary variable matches explicit triple sums") {
    TestRng rng(404);
    Factor f = random_factor(rng, {"X", "Y"}, {3, 3});
    Factor out = sum_marginal(f, {"Y"});
    REQUIRE(out.scope() == std::vector<std::string>{"X"});
    for (int x = 0; x < 3; ++x) {
        double want = f.at({x, 0}) + f.at({x, 1}) + f.at({x, 2});
        CHECK(out.at({x}) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("product is commutative and associative on random factors") {
    TestRng rng(505);
    for (int trial = 0; trial < 50; ++trial) {
        Factor f = random_factor(rng, {"A", "B"}, {2, 2});
        Factor g = random_factor(rng, {"B", "C"}, {2, 3});
        Factor h = random_factor(rng, {"C", "A"}, {3, 2});

        Factor fg = factor_product(f, g);
        Factor gf = factor_product(g, f);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 3; ++c)
                    CHECK(fg.at({a, b, c}) == doctest::Approx(gf.at({b, c, a})).epsilon(1e-9));

        Factor lhs = factor_product(factor_product(f, g), h);
        Factor rhs = factor_product(f, factor_product(g, h));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 3; ++c)
                    CHECK(lhs.at({a, b, c}) == doctest::Approx(rhs.at({a, b, c})).epsilon(1e-9));
    }
}

TEST_CASE("sum-marginal commutes over elimination order") {
    TestRng rng(606);
    for (int trial = 0; trial < 50; ++trial) {
        Factor f = random_factor(rng, {"X", "Y", "Z"}, {2, 3, 2});
        Factor both = sum_marginal(f, {"X", "Y"});
        Factor xy = sum_marginal(sum_marginal(f, {"X"}), {"Y"});
        Factor yx = sum_marginal(sum_marginal(f, {"Y"}), {"X"});
        for (int z = 0; z < 2; ++z) {
            CHECK(both.at({z}) == doctest::Approx(xy.at({z})).epsilon(1e-9));
            CHECK(both.at({z}) == doctest::Approx(yx.at({z})).epsilon(1e-9));
        }
    }
}

} // TEST_SUITE
