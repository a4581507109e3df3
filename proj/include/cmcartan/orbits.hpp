#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "cmcartan/cartan.hpp"
#include "cmcartan/quotient_ring.hpp"

namespace cmcartan {

/// One orbit of a unit-group action on the additive-order-N elements of
/// O/NO.  The representative is the lexicographically least (a, b).
struct Orbit {
    RingElement rep;
    i64 size;

    friend bool operator==(const Orbit& x, const Orbit& y) {
        return x.rep == y.rep && x.size == y.size;
    }
};

/// Brute-force summary of the unit-group action at one (Delta, N).
struct OrbitReport {
    i64 delta;
    i64 n;
    std::multiset<i64> full_orbit_sizes;
    std::multiset<i64> reduced_orbit_sizes;
    i64 t_tilde_observed;            // min full orbit size
    i64 t_observed;                  // min reduced orbit size
    bool h_observed;                 // t_tilde_observed == phi(N)
    bool simply_transitive_observed; // single full orbit of size #C_N
};

/// Number of elements of additive order exactly N in (Z/N)^2:
/// prod over p^a || N of p^(2a-2) * (p^2 - 1).
inline i64 count_order_n_elements(i64 n) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    i64 result = 1;
    for (auto [p, a] : prime_power_decomposition(n)) {
        i64 local = checked_mul(ipow(p, 2 * a - 2), checked_mul(p, p) - 1);
        result = checked_mul(result, local);
    }
    return result;
}

namespace detail {

inline std::vector<RingElement> order_n_points(const RingContext& ctx) {
    i64 n = ctx.n();
    if (n > kMaxEnumerationLevel) throw bounds_error("level exceeds enumeration bound");
    std::vector<RingElement> pts;
    if (n == 1) {
        pts.push_back({0, 0});
        return pts;
    }
    for (i64 a = 0; a < n; ++a)
        for (i64 b = 0; b < n; ++b)
            if (additive_order(ctx, {a, b}) == n) pts.push_back({a, b});
    return pts;
}

/// Orbit of p under the given list of units, as a sorted element set.
inline std::vector<RingElement> orbit_of(const RingContext& ctx, RingElement p,
                                         const std::vector<RingElement>& units) {
    std::vector<RingElement> orb;
    orb.reserve(units.size());
    for (const auto& u : units) orb.push_back(mul(ctx, u, p));
    std::sort(orb.begin(), orb.end());
    orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
    return orb;
}

} // namespace detail

/// Orbits of the full unit group (O/NO)^x on the order-N elements,
/// sorted by representative.
inline std::vector<Orbit> full_orbits_detailed(const RingContext& ctx) {
    auto units = enumerate_units(ctx);
    std::set<RingElement> seen;
    std::vector<Orbit> orbits;
    for (const auto& p : detail::order_n_points(ctx)) {
        if (seen.count(p)) continue;
        auto orb = detail::orbit_of(ctx, p, units);
        seen.insert(orb.begin(), orb.end());
        orbits.push_back({orb.front(), static_cast<i64>(orb.size())});
    }
    return orbits;
}

/// As above, but each full orbit is replaced by its class count under the
/// torsion units O^x.  The reduced orbit size is computed by an explicit
/// quotient, never by dividing sizes: the two can differ when torsion units
/// stabilize points.
inline std::vector<Orbit> reduced_orbits_detailed(const RingContext& ctx) {
    auto units = enumerate_units(ctx);
    auto torsion = unit_image(ctx);
    std::set<RingElement> seen;
    std::vector<Orbit> orbits;
    for (const auto& p : detail::order_n_points(ctx)) {
        if (seen.count(p)) continue;
        auto orb = detail::orbit_of(ctx, p, units);
        seen.insert(orb.begin(), orb.end());
        std::set<RingElement> classed;
        i64 classes = 0;
        for (const auto& q : orb) {
            if (classed.count(q)) continue;
            ++classes;
            for (const auto& u : torsion) classed.insert(mul(ctx, u, q));
        }
        orbits.push_back({orb.front(), classes});
    }
    return orbits;
}

inline std::multiset<i64> full_orbits(Discriminant delta, i64 n) {
    RingContext ctx(delta, n);
    std::multiset<i64> sizes;
    for (const auto& o : full_orbits_detailed(ctx)) sizes.insert(o.size);
    return sizes;
}

inline std::multiset<i64> reduced_orbits(Discriminant delta, i64 n) {
    RingContext ctx(delta, n);
    std::multiset<i64> sizes;
    for (const auto& o : reduced_orbits_detailed(ctx)) sizes.insert(o.size);
    return sizes;
}

/// Least orbit size: over the reduced orbits this is the enumeration-side
/// minimal torsion degree, over the full orbits the T-tilde value.
inline i64 min_orbit(Discriminant delta, i64 n, bool reduced) {
    auto sizes = reduced ? reduced_orbits(delta, n) : full_orbits(delta, n);
    return *sizes.begin();
}

inline OrbitReport make_orbit_report(Discriminant delta, i64 n) {
    OrbitReport r;
    r.delta = delta.value();
    r.n = n;
    r.full_orbit_sizes = full_orbits(delta, n);
    r.reduced_orbit_sizes = reduced_orbits(delta, n);
    r.t_tilde_observed = *r.full_orbit_sizes.begin();
    r.t_observed = *r.reduced_orbit_sizes.begin();
    r.h_observed = r.t_tilde_observed == euler_phi(n);
    r.simply_transitive_observed =
        r.full_orbit_sizes.size() == 1 &&
        *r.full_orbit_sizes.begin() == cartan_order_formula(delta, n);
    return r;
}

/// Check that full-orbit size multisets behave multiplicatively across a
/// coprime factorization: sizes at level m*n must be the pairwise products
/// of sizes at m and at n.
inline bool crt_orbit_product_check(Discriminant delta, i64 m, i64 n) {
    if (std::gcd(m, n) != 1) throw std::invalid_argument("levels must be coprime");
    auto whole = full_orbits(delta, checked_mul(m, n));
    std::multiset<i64> combined;
    for (i64 s : full_orbits(delta, m))
        for (i64 t : full_orbits(delta, n)) combined.insert(checked_mul(s, t));
    return whole == combined;
}

} // namespace cmcartan
