#pragma once

#include <algorithm>
#include <vector>

#include "cmcartan/integers.hpp"
#include "cmcartan/orders.hpp"
#include "cmcartan/quotient_ring.hpp"

namespace cmcartan {

/// #(O/NO)^x = prod over p^a || N of p^(2a-2) * (p - 1) * (p - (Delta|p)).
inline i64 cartan_order_formula(Discriminant delta, i64 n) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    if (n > kMaxFormulaLevel) throw bounds_error("level exceeds formula bound");
    i64 result = 1;
    for (auto [p, a] : prime_power_decomposition(n)) {
        i64 chi = kronecker(delta, p);
        i64 local = checked_mul(ipow(p, 2 * a - 2), checked_mul(p - 1, p - chi));
        result = checked_mul(result, local);
    }
    return result;
}

/// Exhaustive unit enumeration in O/NO, sorted by (a, b).
inline std::vector<RingElement> enumerate_units(const RingContext& ctx) {
    i64 n = ctx.n();
    if (n > kMaxEnumerationLevel) throw bounds_error("level exceeds enumeration bound");
    std::vector<RingElement> units;
    if (n == 1) {
        units.push_back({0, 0});
        return units;
    }
    for (i64 a = 0; a < n; ++a)
        for (i64 b = 0; b < n; ++b)
            if (is_unit(ctx, {a, b})) units.push_back({a, b});
    return units;
}

/// Image of the unit group O^x in O/NO: {1, -1} plus the extra torsion
/// units for Delta = -4 (i = 2 + w, since w = -2 + i) and Delta = -3
/// (zeta_6 = 2 + w, since w = (-3 + sqrt(-3))/2 = zeta_6 - 2).
inline std::vector<RingElement> unit_image(const RingContext& ctx) {
    std::vector<RingElement> image;
    if (ctx.n() == 1) {
        image.push_back({0, 0});
        return image;
    }
    i64 d = ctx.delta();
    RingElement g = (d == -3 || d == -4) ? reduce(ctx, 2, 1) : reduce(ctx, -1, 0);
    RingElement e = one(ctx);
    do {
        image.push_back(e);
        e = mul(ctx, e, g);
    } while (!(e == one(ctx)));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return image;
}

/// Size of the image of O^x in (O/NO)^x: #O^x for N >= 3, half that for
/// N = 2 (where -1 = 1), and 1 for N = 1.
inline i64 unit_image_order(Discriminant delta, i64 n) {
    if (n == 1) return 1;
    i64 w = unit_group_order(delta);
    return n == 2 ? w / 2 : w;
}

/// Order of the reduced Cartan group C_N(O) / image(O^x).
inline i64 reduced_cartan_order(Discriminant delta, i64 n) {
    return exact_div(cartan_order_formula(delta, n), unit_image_order(delta, n),
                     "reduced_cartan_order");
}

} // namespace cmcartan
