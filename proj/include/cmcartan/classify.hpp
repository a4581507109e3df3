#pragma once

#include <set>
#include <string>

#include "cmcartan/degrees.hpp"
#include "cmcartan/integers.hpp"
#include "cmcartan/orders.hpp"

namespace cmcartan {

/// Abelian group of rank <= 2 in invariant-factor form Z/s x Z/e, s | e.
/// (1,1) is the trivial group, (1,n) is cyclic of order n.
struct GroupShape {
    i64 s;
    i64 e;

    GroupShape(i64 s_, i64 e_) : s(s_), e(e_) {
        if (s < 1 || e < 1 || e % s != 0)
            throw std::invalid_argument("GroupShape: need 1 <= s | e");
    }

    friend bool operator==(GroupShape x, GroupShape y) { return x.s == y.s && x.e == y.e; }
    friend bool operator<(GroupShape x, GroupShape y) {
        return x.s != y.s ? x.s < y.s : x.e < y.e;
    }

    std::string str() const { return std::to_string(s) + "x" + std::to_string(e); }
};

/// 2-torsion over K(j) for Delta outside {-3, -4}: trivial when
/// Delta = 5 (mod 8), cyclic of order 2 when Delta = 0 (mod 4), full when
/// Delta = 1 (mod 8).
inline GroupShape two_torsion_over_kj(Discriminant delta) {
    i64 d = delta.value();
    if (d == -3 || d == -4)
        throw std::invalid_argument("two_torsion_over_kj: use torsion_groups_over_kj for -3, -4");
    if (mod_floor(d, 8) == 5) return {1, 1};
    if (mod_floor(d, 4) == 0) return {1, 2};
    return {2, 2};
}

/// All groups occurring as the torsion subgroup of some twist of an O-CM
/// curve over K(j).  The discriminants -3 and -4 have fixed exceptional
/// lists; otherwise the set is built from the 2-torsion plus cyclic
/// extensions of order 3, 4, 6 governed by the square predicates, with
/// order-4 points suppressed above full 2-torsion whenever order-3 points
/// exist on the same twist.
inline std::set<GroupShape> torsion_groups_over_kj(Discriminant delta) {
    i64 d = delta.value();
    if (d == -4) return {{1, 2}, {2, 2}, {2, 4}, {1, 10}};
    if (d == -3) return {{1, 1}, {1, 3}, {1, 7}, {2, 2}, {2, 6}, {3, 3}};

    bool h3 = h_predicate(delta, 3);
    bool h4 = h_predicate(delta, 4);
    GroupShape two = two_torsion_over_kj(delta);
    std::set<GroupShape> out;
    if (two == GroupShape{1, 1}) {
        out.insert({1, 1});
        if (h3) out.insert({1, 3});
    } else if (two == GroupShape{1, 2}) {
        out.insert({1, 2});
        if (h4) out.insert({1, 4});
        if (h3) out.insert({1, 6});
    } else {
        out.insert({2, 2});
        if (h4 && !h3) out.insert({2, 4});
        if (h3) out.insert({2, 6});
    }
    return out;
}

/// Existence of a K(j)-rational cyclic N-isogeny.  Generic discriminants
/// reduce to the square predicate; -4 and -3 have explicit factorizations
/// of the admissible levels.
inline bool cyclic_isogeny_exists(Discriminant delta, i64 n) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    i64 d = delta.value();
    if (d != -3 && d != -4) return h_predicate(delta, n);

    int e2 = 0, e3 = 0;
    i64 m = n;
    while (m % 2 == 0) { m /= 2; ++e2; }
    while (m % 3 == 0) { m /= 3; ++e3; }

    if (d == -4) {
        if (e3 > 0) return false;
        if (e2 > 2) return false;
        for (auto [p, a] : prime_power_decomposition(m))
            if (mod_floor(p, 4) != 1) return false;
        return true;
    }
    // d == -3: n = 2^e2 * 3^e3 * m with every prime of m = 1 (mod 3)
    static const std::set<std::pair<int, int>> admissible = {
        {0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}};
    if (!admissible.count({e2, e3})) return false;
    for (auto [p, a] : prime_power_decomposition(m))
        if (mod_floor(p, 3) != 1) return false;
    return true;
}

/// Obstruction witness for Delta in {-3, -4}: when the product of the
/// closed-form minimal orbit sizes over the prime powers of n exceeds
/// phi(n) * w_K / 2, no rational cyclic n-isogeny can exist.
inline bool t_tilde_argument(Discriminant delta, i64 n) {
    i64 d = delta.value();
    if (d != -3 && d != -4)
        throw std::invalid_argument("t_tilde_argument: only for discriminants -3, -4");
    if (n < 2) return false;
    i64 product = 1;
    for (auto [p, a] : prime_power_decomposition(n))
        product = checked_mul(product, t_tilde(delta, p, a));
    i64 bound = exact_div(checked_mul(euler_phi(n), unit_group_order(delta)), 2,
                          "t_tilde_argument bound");
    return product > bound;
}

} // namespace cmcartan
