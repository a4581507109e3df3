#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "cmcartan/classify.hpp"
#include "cmcartan/orders.hpp"

using namespace cmcartan;

namespace {

// Literal fixture: torsion-subgroup sets over K(j) by residue of Delta mod
// 48, for Delta outside {-3, -4}.  Kept independent of the derivation in
// torsion_groups_over_kj so the two can cross-check each other.
const std::map<i64, std::set<GroupShape>>& mod48_fixture() {
    static const std::map<i64, std::set<GroupShape>> table = {
        {0, {{1, 2}, {1, 4}, {1, 6}}},
        {4, {{1, 2}, {1, 4}, {1, 6}}},
        {16, {{1, 2}, {1, 4}, {1, 6}}},
        {36, {{1, 2}, {1, 4}, {1, 6}}},
        {1, {{2, 2}, {2, 6}}},
        {9, {{2, 2}, {2, 6}}},
        {25, {{2, 2}, {2, 6}}},
        {33, {{2, 2}, {2, 6}}},
        {12, {{1, 2}, {1, 6}}},
        {24, {{1, 2}, {1, 6}}},
        {28, {{1, 2}, {1, 6}}},
        {40, {{1, 2}, {1, 6}}},
        {20, {{1, 2}, {1, 4}}},
        {32, {{1, 2}, {1, 4}}},
        {17, {{2, 2}, {2, 4}}},
        {41, {{2, 2}, {2, 4}}},
        {8, {{1, 2}}},
        {44, {{1, 2}}},
        {13, {{1, 1}, {1, 3}}},
        {21, {{1, 1}, {1, 3}}},
        {37, {{1, 1}, {1, 3}}},
        {45, {{1, 1}, {1, 3}}},
        {5, {{1, 1}}},
        {29, {{1, 1}}},
    };
    return table;
}

} // namespace

TEST_CASE("GroupShape enforces invariant factors") {
    CHECK_NOTHROW(GroupShape(1, 1));
    CHECK_NOTHROW(GroupShape(2, 4));
    CHECK_NOTHROW(GroupShape(3, 3));
    CHECK_THROWS_AS(GroupShape(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(GroupShape(0, 2), std::invalid_argument);
    CHECK(GroupShape(2, 4).str() == "2x4");
}

TEST_CASE("two_torsion_over_kj residue cases") {
    CHECK(two_torsion_over_kj(Discriminant(-7)) == GroupShape(2, 2));
    CHECK(two_torsion_over_kj(Discriminant(-11)) == GroupShape(1, 1));
    CHECK(two_torsion_over_kj(Discriminant(-8)) == GroupShape(1, 2));
    CHECK(two_torsion_over_kj(Discriminant(-15)) == GroupShape(2, 2));
    CHECK(two_torsion_over_kj(Discriminant(-19)) == GroupShape(1, 1));
    CHECK(two_torsion_over_kj(Discriminant(-20)) == GroupShape(1, 2));
    CHECK_THROWS_AS(two_torsion_over_kj(Discriminant(-3)), std::invalid_argument);
    CHECK_THROWS_AS(two_torsion_over_kj(Discriminant(-4)), std::invalid_argument);
}

TEST_CASE("exceptional torsion lists at -3 and -4") {
    std::set<GroupShape> m4 = {{1, 2}, {2, 2}, {2, 4}, {1, 10}};
    std::set<GroupShape> m3 = {{1, 1}, {1, 3}, {1, 7}, {2, 2}, {2, 6}, {3, 3}};
    CHECK(torsion_groups_over_kj(Discriminant(-4)) == m4);
    CHECK(torsion_groups_over_kj(Discriminant(-3)) == m3);
}

TEST_CASE("torsion classification matches the mod-48 fixture across the sweep") {
    CHECK(torsion_groups_over_kj(Discriminant(-48)) ==
          std::set<GroupShape>{{1, 2}, {1, 4}, {1, 6}});
    for (i64 d = -7; d >= -400; --d) {
        i64 r = mod_floor(d, 4);
        if (r != 0 && r != 1) continue;
        i64 key = mod_floor(d, 48);
        auto it = mod48_fixture().find(key);
        REQUIRE(it != mod48_fixture().end());
        CHECK(torsion_groups_over_kj(Discriminant(d)) == it->second);
    }
}

TEST_CASE("only full 2-torsion occurs outside the exceptional discriminants") {
    for (i64 d = -7; d >= -400; --d) {
        i64 r = mod_floor(d, 4);
        if (r != 0 && r != 1) continue;
        for (const auto& g : torsion_groups_over_kj(Discriminant(d)))
            CHECK(g.s <= 2);
    }
    for (const auto& g : torsion_groups_over_kj(Discriminant(-3)))
        CHECK((g.s <= 2 || g == GroupShape(3, 3)));
}

TEST_CASE("cyclic isogeny classification worked conclusions") {
    Discriminant m4(-4), m3(-3);
    for (i64 n : {2, 4, 5, 13, 20}) CHECK(cyclic_isogeny_exists(m4, n));
    for (i64 n : {3, 7, 8, 11}) CHECK(!cyclic_isogeny_exists(m4, n));
    for (i64 n : {2, 3, 6, 7, 9, 13}) CHECK(cyclic_isogeny_exists(m3, n));
    for (i64 n : {4, 5, 18, 27}) CHECK(!cyclic_isogeny_exists(m3, n));
}

TEST_CASE("generic isogeny existence is the square predicate") {
    for (i64 d : {-7, -8, -11, -15, -20, -163})
        for (i64 n = 1; n <= 40; ++n)
            CHECK(cyclic_isogeny_exists(Discriminant(d), n) ==
                  h_predicate(Discriminant(d), n));
}

TEST_CASE("isogeny levels are divisor-closed and coprime-multiplicative") {
    for (i64 d : {-3, -4, -7, -8, -15, -20}) {
        Discriminant delta(d);
        std::vector<bool> ok(101);
        for (i64 n = 1; n <= 100; ++n) ok[n] = cyclic_isogeny_exists(delta, n);
        for (i64 n = 1; n <= 100; ++n) {
            if (!ok[n]) continue;
            for (i64 m = 1; m <= n; ++m)
                if (n % m == 0) CHECK(ok[m]);
        }
        for (i64 m = 2; m <= 100; ++m)
            for (i64 n = m + 1; m * n <= 100; ++n) {
                if (std::gcd(m, n) != 1 || !ok[m] || !ok[n]) continue;
                // at -3 the 2-part and 3-part live on different twists
                if (d == -3 && std::gcd(m, 6) != 1 && std::gcd(n, 6) != 1) continue;
                CHECK(ok[m * n]);
            }
    }
    // the known non-composing pair
    CHECK(cyclic_isogeny_exists(Discriminant(-3), 2));
    CHECK(cyclic_isogeny_exists(Discriminant(-3), 9));
    CHECK(!cyclic_isogeny_exists(Discriminant(-3), 18));
}

TEST_CASE("t_tilde obstruction worked values") {
    CHECK(t_tilde_argument(Discriminant(-4), 8));
    CHECK(t_tilde_argument(Discriminant(-3), 27));
    CHECK(t_tilde_argument(Discriminant(-3), 18));
    CHECK(!t_tilde_argument(Discriminant(-3), 9));
    CHECK_THROWS_AS(t_tilde_argument(Discriminant(-7), 8), std::invalid_argument);
}

TEST_CASE("t_tilde obstruction never contradicts the classification") {
    for (i64 d : {-3, -4}) {
        Discriminant delta(d);
        for (i64 n = 2; n <= 100; ++n)
            if (t_tilde_argument(delta, n))
                CHECK(!cyclic_isogeny_exists(delta, n));
    }
}
