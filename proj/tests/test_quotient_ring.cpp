#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cmcartan/cartan.hpp"
#include "cmcartan/orders.hpp"
#include "cmcartan/quotient_ring.hpp"

using namespace cmcartan;

namespace {

// Oracle: find an inverse by scanning all N^2 elements.
bool has_inverse_by_scan(const RingContext& ctx, RingElement x) {
    for (i64 a = 0; a < ctx.n(); ++a)
        for (i64 b = 0; b < ctx.n(); ++b)
            if (mul(ctx, x, {a, b}) == one(ctx)) return true;
    return ctx.n() == 1;
}

// Oracle: orbit of p under all units, by direct multiplication.
std::set<RingElement> orbit_by_scan(const RingContext& ctx, RingElement p) {
    std::set<RingElement> orb;
    for (const auto& u : enumerate_units(ctx)) orb.insert(mul(ctx, u, p));
    return orb;
}

const i64 kSweepDiscs[] = {-3, -4, -7, -8, -11, -12, -15, -16, -20, -27, -32, -48};

} // namespace

TEST_CASE("multiplication matches hand-computed basis products") {
    // Delta = -4: w = -2 + i, so w^2 = 3 - 4i = 3 + ... check coordinates
    RingContext c4(Discriminant(-4), 8);
    CHECK(c4.const_coeff() == -5);
    CHECK(c4.trace_coeff() == -4);
    CHECK(mul(c4, {0, 1}, {0, 1}) == RingElement{3, 4});

    RingContext c3(Discriminant(-3), 9);
    CHECK(c3.const_coeff() == -3);
    CHECK(c3.trace_coeff() == -3);
    CHECK(mul(c3, {0, 1}, {0, 1}) == RingElement{6, 6});

    RingContext c5(Discriminant(-7), 5);
    CHECK(add(c5, {1, 2}, {3, 4}) == RingElement{4, 1});
    CHECK(neg(c5, {0, 0}) == RingElement{0, 0});
    RingContext cm(Discriminant(-7), 4);
    CHECK(scalar_mul(cm, 3, {1, 1}) == RingElement{3, 3});
}

TEST_CASE("one is a multiplicative identity everywhere") {
    for (i64 d : kSweepDiscs) {
        RingContext ctx(Discriminant(d), 12);
        for (i64 a = 0; a < 12; ++a)
            for (i64 b = 0; b < 12; ++b)
                CHECK(mul(ctx, one(ctx), {a, b}) == RingElement{a, b});
    }
}

TEST_CASE("ring axioms hold on random triples") {
    std::mt19937_64 rng(20260826);
    for (i64 d : kSweepDiscs) {
        for (i64 n : {2, 5, 9, 16, 21}) {
            RingContext ctx(Discriminant(d), n);
            std::uniform_int_distribution<i64> pick(0, n - 1);
            for (int trial = 0; trial < 400; ++trial) {
                RingElement x{pick(rng), pick(rng)};
                RingElement y{pick(rng), pick(rng)};
                RingElement z{pick(rng), pick(rng)};
                CHECK(mul(ctx, x, y) == mul(ctx, y, x));
                CHECK(mul(ctx, mul(ctx, x, y), z) == mul(ctx, x, mul(ctx, y, z)));
                CHECK(mul(ctx, x, add(ctx, y, z)) ==
                      add(ctx, mul(ctx, x, y), mul(ctx, x, z)));
                CHECK(add(ctx, x, neg(ctx, x)) == zero(ctx));
            }
        }
    }
}

TEST_CASE("norm is multiplicative and matches the form value") {
    RingContext c45(Discriminant(-4), 5);
    CHECK(norm(c45, {0, 1}) == 0);
    RingContext c37(Discriminant(-3), 7);
    CHECK(norm(c37, {0, 1}) == 3);

    std::mt19937_64 rng(7);
    for (i64 d : kSweepDiscs) {
        for (i64 n : {4, 7, 15}) {
            RingContext ctx(Discriminant(d), n);
            std::uniform_int_distribution<i64> pick(0, n - 1);
            for (int trial = 0; trial < 300; ++trial) {
                RingElement x{pick(rng), pick(rng)};
                RingElement y{pick(rng), pick(rng)};
                CHECK(norm(ctx, mul(ctx, x, y)) ==
                      mod_floor(norm(ctx, x) * norm(ctx, y), n));
                CHECK(norm(ctx, one(ctx)) == mod_floor(1, n));
            }
        }
    }
}

TEST_CASE("is_unit agrees with exhaustive inverse search") {
    for (i64 d : kSweepDiscs) {
        for (i64 n : {1, 2, 3, 4, 6, 8, 9, 10}) {
            RingContext ctx(Discriminant(d), n);
            for (i64 a = 0; a < n; ++a)
                for (i64 b = 0; b < n; ++b)
                    CHECK(is_unit(ctx, {a, b}) == has_inverse_by_scan(ctx, {a, b}));
        }
    }
    CHECK(!is_unit(RingContext(Discriminant(-4), 5), {0, 1}));
    CHECK(!is_unit(RingContext(Discriminant(-7), 2), {0, 1}));
}

TEST_CASE("inverse times element is one") {
    for (i64 d : kSweepDiscs) {
        RingContext ctx(Discriminant(d), 18);
        for (i64 a = 0; a < 18; ++a)
            for (i64 b = 0; b < 18; ++b) {
                auto inv = inverse(ctx, {a, b});
                CHECK(inv.has_value() == is_unit(ctx, {a, b}));
                if (inv) CHECK(mul(ctx, {a, b}, *inv) == one(ctx));
            }
    }
}

TEST_CASE("additive_order divides N and hits the gcd formula") {
    RingContext ctx(Discriminant(-7), 12);
    CHECK(additive_order(ctx, {0, 0}) == 1);
    CHECK(additive_order(ctx, {4, 8}) == 3);
    CHECK(additive_order(ctx, {1, 0}) == 12);
    for (i64 a = 0; a < 12; ++a)
        for (i64 b = 0; b < 12; ++b) {
            i64 ord = additive_order(ctx, {a, b});
            CHECK(12 % ord == 0);
            CHECK(scalar_mul(ctx, ord, {a, b}) == zero(ctx));
            if (ord > 1) CHECK(!(scalar_mul(ctx, ord / 2 == 0 ? 1 : ord / 2, {a, b}) == zero(ctx)));
        }
}

TEST_CASE("annihilator of special elements") {
    RingContext ctx(Discriminant(-7), 6);
    auto whole = annihilator(ctx, {0, 0});
    CHECK(whole.index == 1);

    auto unit_ann = annihilator(ctx, {1, 0});
    CHECK(unit_ann.index == 36);
    CHECK(unit_ann.shape_n == 6);
    CHECK(unit_ann.shape_m == 6);

    RingContext c42(Discriminant(-4), 2);
    auto a11 = annihilator(c42, {1, 1});
    CHECK(a11.index == 2);
    CHECK(a11.shape_n == 2);
    CHECK(a11.shape_m == 1);
}

TEST_CASE("annihilator subgroup annihilates and is an ideal") {
    for (i64 d : kSweepDiscs) {
        for (i64 n : {2, 4, 6, 9}) {
            RingContext ctx(Discriminant(d), n);
            for (i64 a = 0; a < n; ++a)
                for (i64 b = 0; b < n; ++b) {
                    RingElement p{a, b};
                    auto ideal = annihilator(ctx, p);
                    auto elts = ideal_elements(ctx, ideal);
                    CHECK(static_cast<i64>(elts.size()) * ideal.index == i64(n) * n);
                    for (const auto& x : elts) {
                        CHECK(mul(ctx, x, p) == zero(ctx));
                        // closure under multiplication by w
                        RingElement xw = mul(ctx, x, {0, 1});
                        CHECK(mul(ctx, xw, p) == zero(ctx));
                    }
                    // completeness: every annihilating element lies in the set
                    std::set<RingElement> members(elts.begin(), elts.end());
                    for (i64 u = 0; u < n; ++u)
                        for (i64 v = 0; v < n; ++v)
                            if (mul(ctx, {u, v}, p) == zero(ctx))
                                CHECK(members.count({u, v}) == 1);
                    CHECK(ideal.shape_n % ideal.shape_m == 0);
                    CHECK(n % ideal.shape_n == 0);
                    CHECK(ideal.index == ideal.shape_n * ideal.shape_m);
                }
        }
    }
}

TEST_CASE("unit_count_mod_ideal equals the brute-force orbit size") {
    for (i64 d : kSweepDiscs) {
        for (i64 n : {2, 3, 4, 5, 6, 8, 9, 12}) {
            RingContext ctx(Discriminant(d), n);
            for (i64 a = 0; a < n; ++a)
                for (i64 b = 0; b < n; ++b) {
                    auto ideal = annihilator(ctx, {a, b});
                    i64 predicted = unit_count_mod_ideal(ctx, ideal);
                    i64 observed = static_cast<i64>(orbit_by_scan(ctx, {a, b}).size());
                    CHECK(predicted == observed);
                }
        }
    }
    // full level: the unit count of O/NO itself
    RingContext c73(Discriminant(-7), 3);
    CHECK(unit_count_mod_ideal(c73, annihilator(c73, {1, 0})) == 8);
}

TEST_CASE("level 1 is the zero ring") {
    RingContext ctx(Discriminant(-7), 1);
    CHECK(one(ctx) == zero(ctx));
    CHECK(additive_order(ctx, {0, 0}) == 1);
    CHECK(annihilator(ctx, {0, 0}).index == 1);
    CHECK(unit_count_mod_ideal(ctx, annihilator(ctx, {0, 0})) == 1);
}
