#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cmcartan/integers.hpp"
#include "cmcartan/orders.hpp"

namespace cmcartan {

/// Shared context for arithmetic in O/NO.  The ring is presented on the
/// basis {1, w} with w = f * tau_K, so
///   w^2 = t*w + c0,  t = f*Delta_K,  c0 = f^2 * (Delta_K - Delta_K^2) / 4.
class RingContext {
public:
    RingContext(Discriminant delta, i64 n)
        : order_(factor_discriminant(delta)), n_(n) {
        if (n < 1) throw std::invalid_argument("level must be >= 1");
        i64 dk = order_.delta_k.value();
        i64 f = order_.conductor;
        t_ = checked_mul(f, dk);
        c0_ = exact_div(checked_mul(checked_mul(f, f), dk - checked_mul(dk, dk)), 4, "w^2 constant term");
    }

    i64 n() const { return n_; }
    i64 delta() const { return order_.delta.value(); }
    i64 delta_k() const { return order_.delta_k.value(); }
    i64 conductor() const { return order_.conductor; }
    const OrderSpec& order() const { return order_; }
    i64 trace_coeff() const { return t_; }      // t in w^2 = t*w + c0
    i64 const_coeff() const { return c0_; }     // c0

    friend bool operator==(const RingContext& a, const RingContext& b) {
        return a.delta() == b.delta() && a.n_ == b.n_;
    }

private:
    OrderSpec order_;
    i64 n_;
    i64 t_;
    i64 c0_;
};

/// An element a + b*w of O/NO, coordinates reduced to [0, N).
/// For N = 1 the ring is the zero ring and (0,0) is the only element.
struct RingElement {
    i64 a;
    i64 b;

    friend bool operator==(RingElement x, RingElement y) { return x.a == y.a && x.b == y.b; }
    friend bool operator<(RingElement x, RingElement y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
};

inline RingElement reduce(const RingContext& ctx, i64 a, i64 b) {
    return {mod_floor(a, ctx.n()), mod_floor(b, ctx.n())};
}

inline RingElement zero(const RingContext&) { return {0, 0}; }
inline RingElement one(const RingContext& ctx) { return reduce(ctx, 1, 0); }

inline RingElement add(const RingContext& ctx, RingElement x, RingElement y) {
    return reduce(ctx, x.a + y.a, x.b + y.b);
}

inline RingElement neg(const RingContext& ctx, RingElement x) {
    return reduce(ctx, -x.a, -x.b);
}

inline RingElement scalar_mul(const RingContext& ctx, i64 c, RingElement x) {
    return reduce(ctx, checked_mul(c, x.a), checked_mul(c, x.b));
}

/// (a1 + b1 w)(a2 + b2 w) = (a1 a2 + b1 b2 c0) + (a1 b2 + a2 b1 + b1 b2 t) w.
inline RingElement mul(const RingContext& ctx, RingElement x, RingElement y) {
    i64 bb = checked_mul(x.b, y.b);
    i64 a = checked_add(checked_mul(x.a, y.a), checked_mul(bb, ctx.const_coeff()));
    i64 b = checked_add(checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a)),
                        checked_mul(bb, ctx.trace_coeff()));
    return reduce(ctx, a, b);
}

/// Conjugate: a + b*w  ->  (a + b*t) - b*w   (w + wbar = t, w*wbar = -c0).
inline RingElement conj(const RingContext& ctx, RingElement x) {
    return reduce(ctx, checked_add(x.a, checked_mul(x.b, ctx.trace_coeff())), -x.b);
}

/// N(a + b*w) = a^2 + a*b*t - b^2*c0, reduced mod N.  Equals the determinant
/// of the multiplication-by-x matrix on the basis {1, w}.
inline i64 norm(const RingContext& ctx, RingElement x) {
    i64 v = checked_add(checked_mul(x.a, x.a), checked_mul(checked_mul(x.a, x.b), ctx.trace_coeff()));
    v = checked_add(v, -checked_mul(checked_mul(x.b, x.b), ctx.const_coeff()));
    return mod_floor(v, ctx.n());
}

inline bool is_unit(const RingContext& ctx, RingElement x) {
    return std::gcd(norm(ctx, x), ctx.n()) == 1;
}

/// x^-1 = conj(x) * norm(x)^-1 when norm(x) is invertible mod N.
inline std::optional<RingElement> inverse(const RingContext& ctx, RingElement x) {
    i64 nx = norm(ctx, x);
    if (std::gcd(nx, ctx.n()) != 1) return std::nullopt;
    if (ctx.n() == 1) return RingElement{0, 0};
    return scalar_mul(ctx, mod_inverse(nx, ctx.n()), conj(ctx, x));
}

/// Additive order: N / gcd(a, b, N).
inline i64 additive_order(const RingContext& ctx, RingElement x) {
    return ctx.n() / std::gcd(std::gcd(x.a, x.b), ctx.n());
}

/// The annihilator ideal I_P = {x in O/NO : x*P = 0}, stored as the HNF of
/// its preimage lattice L in Z^2 (N*Z^2 <= L), together with the index
/// #O/I_P = [Z^2 : L] and the additive invariant factors (N', M) of O/I_P,
/// M | N' | N.
struct IdealClassifier {
    std::array<std::array<i64, 2>, 2> hnf;  // lower-triangular row basis of L
    i64 index;                              // = N' * M
    i64 shape_n;                            // N'
    i64 shape_m;                            // M
};

namespace detail {

/// Diagonalize a 2x2 integer matrix: produces d1, d2 and unimodular U, V
/// with U * A * V = diag(d1, d2).  The diagonal entries are nonnegative but
/// not forced into divisibility order.
inline void diagonalize_2x2(std::array<std::array<i64, 2>, 2> m, i64& d1, i64& d2,
                            std::array<std::array<i64, 2>, 2>& u, std::array<std::array<i64, 2>, 2>& v) {
    u = {{{1, 0}, {0, 1}}};
    v = {{{1, 0}, {0, 1}}};
    auto row_op = [&](i64 c) {  // row 1 -= c * row 0
        for (int j = 0; j < 2; ++j) { m[1][j] -= checked_mul(c, m[0][j]); u[1][j] -= checked_mul(c, u[0][j]); }
    };
    auto col_op = [&](i64 c) {  // col 1 -= c * col 0
        for (int i = 0; i < 2; ++i) { m[i][1] -= checked_mul(c, m[i][0]); v[i][1] -= checked_mul(c, v[i][0]); }
    };
    auto swap_rows = [&] { std::swap(m[0], m[1]); std::swap(u[0], u[1]); };
    auto swap_cols = [&] {
        for (int i = 0; i < 2; ++i) { std::swap(m[i][0], m[i][1]); std::swap(v[i][0], v[i][1]); }
    };

    while (m[1][0] != 0 || m[0][1] != 0) {
        while (m[1][0] != 0) {
            if (m[0][0] == 0 || std::abs(m[1][0]) < std::abs(m[0][0])) swap_rows();
            if (m[1][0] == 0) break;
            row_op(m[1][0] / m[0][0]);
        }
        while (m[0][1] != 0) {
            if (m[0][0] == 0 || std::abs(m[0][1]) < std::abs(m[0][0])) swap_cols();
            if (m[0][1] == 0) break;
            col_op(m[0][1] / m[0][0]);
        }
    }
    d1 = std::abs(m[0][0]);
    d2 = std::abs(m[1][1]);
}

/// HNF (lower triangular, nonnegative, reduced) of the lattice spanned by
/// the rows of m, assuming full rank.
inline std::array<std::array<i64, 2>, 2> hnf_rows(std::array<std::array<i64, 2>, 2> m) {
    // Euclidean steps on column 1 until it reads (0, d2): each pass leaves
    // |m[0][1]| strictly smaller, so this terminates at the column gcd.
    while (m[0][1] != 0) {
        i64 q = m[1][1] / m[0][1];
        m[1][0] -= checked_mul(q, m[0][0]);
        m[1][1] -= checked_mul(q, m[0][1]);
        std::swap(m[0], m[1]);
    }
    if (m[0][0] == 0 || m[1][1] == 0) throw std::logic_error("hnf_rows: rank deficient");
    if (m[0][0] < 0) { m[0][0] = -m[0][0]; }
    if (m[1][1] < 0) { m[1][0] = -m[1][0]; m[1][1] = -m[1][1]; }
    m[1][0] = mod_floor(m[1][0], m[0][0]);
    return m;
}

} // namespace detail

/// Annihilator of p: solve M*x = 0 mod N where M is the matrix of
/// multiplication by p on the basis {1, w}.  The solution lattice
/// L = {x in Z^2 : M x in N Z^2} is computed through the Smith form of M.
inline IdealClassifier annihilator(const RingContext& ctx, RingElement p) {
    i64 n = ctx.n();
    if (n == 1)
        return IdealClassifier{{{{1, 0}, {0, 1}}}, 1, 1, 1};

    // multiplication-by-p matrix: columns are p*1 and p*w
    RingElement pw = mul(ctx, p, RingElement{0, 1});
    std::array<std::array<i64, 2>, 2> m = {{{p.a, pw.a}, {p.b, pw.b}}};

    i64 s1, s2;
    std::array<std::array<i64, 2>, 2> u, v;
    detail::diagonalize_2x2(m, s1, s2, u, v);
    // M x in N Z^2  <=>  diag(s1,s2) V^-1 x in N Z^2; with y = V^-1 x the
    // solutions are y_i in (N / gcd(s_i, N)) Z, so L has basis V * diag(d1, d2).
    i64 d1 = n / std::gcd(mod_floor(s1, n), n);
    i64 d2 = n / std::gcd(mod_floor(s2, n), n);
    std::array<std::array<i64, 2>, 2> basis = {{{checked_mul(v[0][0], d1), checked_mul(v[1][0], d1)},
                                                {checked_mul(v[0][1], d2), checked_mul(v[1][1], d2)}}};
    auto hnf = detail::hnf_rows(basis);
    i64 index = checked_mul(hnf[0][0], hnf[1][1]);

    // additive shape of O/I_P = Z^2 / L: invariant factors of the basis,
    // i.e. gcd and lcm of the diagonal after full diagonalization
    i64 t1, t2;
    std::array<std::array<i64, 2>, 2> u2, v2;
    detail::diagonalize_2x2(hnf, t1, t2, u2, v2);
    i64 shape_m = std::gcd(t1, t2);
    i64 shape_n = exact_div(checked_mul(t1, t2), shape_m, "invariant factor lcm");
    if (checked_mul(shape_n, shape_m) != index)
        throw std::logic_error("annihilator: invariant factors disagree with index");
    return IdealClassifier{hnf, index, shape_n, shape_m};
}

/// All elements of the kernel subgroup I_P / N*O inside (Z/N)^2.
inline std::vector<RingElement> ideal_elements(const RingContext& ctx, const IdealClassifier& ideal) {
    i64 n = ctx.n();
    std::vector<RingElement> out;
    const auto& h = ideal.hnf;
    for (i64 i = 0; i < n / h[0][0]; ++i)
        for (i64 j = 0; j < n / h[1][1]; ++j)
            out.push_back(reduce(ctx, checked_mul(i, h[0][0]) + checked_mul(j, h[1][0]),
                                 checked_mul(j, h[1][1])));
    return out;
}

i64 cartan_order_formula(Discriminant delta, i64 n);  // defined in cartan.hpp

/// #(O/I_P)^x.  By Lemma-7.3-style counting this is
/// #C_N(O) / #{k in I_P/N*O : 1 + k is a unit}: the denominator is the size
/// of the stabilizer S(I_P) = units congruent to 1 mod I_P.
inline i64 unit_count_mod_ideal(const RingContext& ctx, const IdealClassifier& ideal) {
    if (ctx.n() == 1) return 1;
    i64 stab = 0;
    for (const auto& k : ideal_elements(ctx, ideal))
        if (is_unit(ctx, add(ctx, one(ctx), k))) ++stab;
    i64 total = cartan_order_formula(Discriminant(ctx.delta()), ctx.n());
    return exact_div(total, stab, "unit_count_mod_ideal");
}

} // namespace cmcartan
