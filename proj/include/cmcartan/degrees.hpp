#pragma once

#include <tuple>
#include <vector>

#include "cmcartan/cartan.hpp"
#include "cmcartan/integers.hpp"
#include "cmcartan/orders.hpp"

namespace cmcartan {

/// Least Cartan orbit size on a point of additive order l^a, in closed form.
///
/// For l^a = 2 the value is 1 when 2 splits or ramifies and 3 when 2 is
/// inert.  For l^a > 2 with l not dividing the conductor the value depends
/// on the splitting of l; for l dividing the conductor with k = ord_l(f)
/// the inert and ramified cases saturate once a passes 2k (resp. 2k + 1).
inline i64 t_tilde(Discriminant delta, i64 l, int a) {
    if (!is_prime(l)) throw std::invalid_argument("t_tilde: l must be prime");
    if (a < 1) throw std::invalid_argument("t_tilde: exponent must be >= 1");
    if (l == 2 && a == 1)
        return kronecker(delta, 2) != -1 ? 1 : 3;

    OrderSpec order = factor_discriminant(delta);
    i64 f = order.conductor;
    if (f % l != 0) {
        i64 chi = kronecker(delta, l);
        if (chi == 1) return checked_mul(ipow(l, a - 1), l - 1);
        if (chi == 0) return checked_mul(ipow(l, 2 * a - 2), l - 1);
        return checked_mul(ipow(l, 2 * a - 2), checked_mul(l, l) - 1);
    }

    int k = 0;
    for (i64 g = f; g % l == 0; g /= l) ++k;
    i64 chi_k = kronecker(order.delta_k, l);
    if (chi_k == 1 || (chi_k == -1 && a <= 2 * k) || (chi_k == 0 && a <= 2 * k + 1))
        return checked_mul(ipow(l, a - 1), l - 1);
    if (chi_k == -1)
        return checked_mul(ipow(l, 2 * a - 2 * k - 1), l - 1);
    return checked_mul(ipow(l, 2 * a - 2 * k - 2), l - 1);
}

/// Minimal degree over which a curve with CM by the order of discriminant
/// Delta gains a rational point of order N, for N >= 3:
/// (prod of t_tilde over prime powers of N) / #O^x, except the special
/// case (Delta, N) = (-3, 3) where the value is 1.
inline i64 torsion_degree(Discriminant delta, i64 n) {
    if (n < 3) throw std::invalid_argument("torsion_degree requires n >= 3");
    if (delta.value() == -3 && n == 3) return 1;
    i64 product = 1;
    for (auto [p, a] : prime_power_decomposition(n))
        product = checked_mul(product, t_tilde(delta, p, a));
    return exact_div(product, unit_group_order(delta), "torsion_degree");
}

/// Table extension of torsion_degree to N = 1, 2.
inline i64 torsion_degree_table(Discriminant delta, i64 n) {
    if (n == 1) return 1;
    if (n == 2) {
        i64 d = delta.value();
        return (d == -3 || d == -4 || kronecker(delta, 2) != -1) ? 1 : 3;
    }
    return torsion_degree(delta, n);
}

/// True iff Delta is a square modulo 4N, by exhaustive scan.
inline bool h_predicate(Discriminant delta, i64 n) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    if (n > kMaxFormulaLevel) throw bounds_error("level exceeds formula bound");
    i64 m = checked_mul(4, n);
    i64 target = mod_floor(delta.value(), m);
    for (i64 s = 0; s < m; ++s)
        if (checked_mul(s, s) % m == target) return true;
    return false;
}

/// True iff every prime dividing n is inert: the Cartan group then acts
/// simply transitively on the order-n elements.
inline bool simply_transitive(Discriminant delta, i64 n) {
    if (n < 2) throw std::invalid_argument("simply_transitive requires n >= 2");
    for (auto [p, a] : prime_power_decomposition(n))
        if (kronecker(delta, p) != -1) return false;
    return true;
}

/// Degree of the extension generated by Weber-function values of the
/// N-torsion over K(j): the reduced Cartan order.
inline i64 weber_degree(Discriminant delta, i64 n) {
    return reduced_cartan_order(delta, n);
}

/// [K(f) : K^(1)] for the order of conductor f inside the maximal order of
/// discriminant delta_k: 1 for f = 1, else (2/w_K) f prod_{p|f}(1 - (dk|p)/p).
inline i64 ring_class_relative_degree(Discriminant delta_k, i64 f) {
    if (!is_fundamental(delta_k.value()))
        throw std::invalid_argument("ring_class_relative_degree: discriminant not fundamental");
    if (f < 1) throw std::invalid_argument("conductor must be >= 1");
    if (f == 1) return 1;
    i64 num = checked_mul(2, f);
    i64 den = unit_group_order(delta_k);
    for (auto [p, a] : prime_power_decomposition(f)) {
        num = checked_mul(num, p - kronecker(delta_k, p));
        den = checked_mul(den, p);
    }
    return exact_div(num, den, "ring_class_relative_degree");
}

/// [K(Nf) : K(f)]: for f > 1 the local factors at p | f are already 1, so
/// the degree is N prod_{p|N}(1 - (Delta|p)/p); for f = 1 the extra torsion
/// units of O_K contribute a factor 2/w_K.
inline i64 tower_degree(Discriminant delta, i64 n) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    if (n == 1) return 1;
    OrderSpec order = factor_discriminant(delta);
    i64 num = n;
    i64 den = 1;
    for (auto [p, a] : prime_power_decomposition(n)) {
        num = checked_mul(num, p - kronecker(delta, p));
        den = checked_mul(den, p);
    }
    if (order.conductor == 1) {
        num = checked_mul(num, 2);
        den = checked_mul(den, unit_group_order(delta));
    }
    return exact_div(num, den, "tower_degree");
}

/// [K^(N) : K^(1)] for the modulus (N) over a maximal order: the unit count
/// phi_K(N) = #(O_K/N)^x divided by the global-unit contribution, which is
/// 1, 2, w_K/2, or w_K depending on delta_k and N.
inline i64 ray_class_degree(Discriminant delta_k, i64 n) {
    if (!is_fundamental(delta_k.value()))
        throw std::invalid_argument("ray_class_degree: discriminant not fundamental");
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    if (n == 1) return 1;
    i64 phi_k = cartan_order_formula(delta_k, n);
    i64 dk = delta_k.value();
    i64 divisor;
    if (dk < -4) divisor = n == 2 ? 1 : 2;
    else if (dk == -4) divisor = n == 2 ? 2 : 4;
    else divisor = n == 2 ? 3 : 6;
    return exact_div(phi_k, divisor, "ray_class_degree");
}

/// phi(N) divides #O^x * T(O,N).
inline bool spy_divisor_check(Discriminant delta, i64 n) {
    if (n < 3) throw std::invalid_argument("spy_divisor_check requires n >= 3");
    i64 rhs = checked_mul(unit_group_order(delta), torsion_degree(delta, n));
    return rhs % euler_phi(n) == 0;
}

/// One row of the degree table: the closed-form invariants at (Delta, N).
struct DegreeTableRow {
    i64 delta;
    i64 delta_k;
    i64 conductor;
    i64 n;
    i64 cartan_order;
    std::vector<std::tuple<i64, int, i64>> t_tilde_factors;  // (l, a, value)
    i64 t;
    bool h;
    i64 weber;
    i64 tower;
    bool isogeny;  // filled by the classification layer
};

inline DegreeTableRow make_degree_row(Discriminant delta, i64 n) {
    OrderSpec order = factor_discriminant(delta);
    DegreeTableRow row;
    row.delta = delta.value();
    row.delta_k = order.delta_k.value();
    row.conductor = order.conductor;
    row.n = n;
    row.cartan_order = cartan_order_formula(delta, n);
    for (auto [p, a] : prime_power_decomposition(n))
        row.t_tilde_factors.emplace_back(p, a, t_tilde(delta, p, a));
    row.t = torsion_degree_table(delta, n);
    row.h = h_predicate(delta, n);
    row.weber = weber_degree(delta, n);
    row.tower = tower_degree(delta, n);
    row.isogeny = false;
    return row;
}

} // namespace cmcartan
