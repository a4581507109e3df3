#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cmcartan/integers.hpp"

namespace cmcartan {

/// Hard bounds.  Overridable at runtime through the CLI; these are the
/// compiled-in defaults for desk-scale verification.
inline constexpr i64 kMaxAbsDiscriminant = 1'000'000;
inline constexpr i64 kMaxFormulaLevel = 10'000;
inline constexpr i64 kMaxEnumerationLevel = 300;

/// Discriminant of an imaginary quadratic order: a negative integer
/// congruent to 0 or 1 mod 4.
class Discriminant {
public:
    explicit Discriminant(i64 d) : value_(d) {
        if (d >= 0)
            throw std::invalid_argument("discriminant must be negative: " + std::to_string(d));
        if (mod_floor(d, 4) != 0 && mod_floor(d, 4) != 1)
            throw std::invalid_argument("discriminant must be 0 or 1 mod 4: " + std::to_string(d));
        if (-d > kMaxAbsDiscriminant)
            throw bounds_error("|discriminant| exceeds bound: " + std::to_string(d));
    }

    i64 value() const { return value_; }
    friend bool operator==(Discriminant a, Discriminant b) { return a.value_ == b.value_; }

private:
    i64 value_;
};

inline Discriminant validate_discriminant(i64 d) { return Discriminant(d); }

inline bool is_squarefree(i64 n) {
    n = std::abs(n);
    for (i64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

/// A fundamental discriminant is either squarefree and 1 mod 4, or 4m with
/// m squarefree and 2 or 3 mod 4.
inline bool is_fundamental(i64 d) {
    if (d >= 0) return false;
    if (mod_floor(d, 4) == 1) return is_squarefree(d);
    if (d % 4 != 0) return false;
    i64 m = d / 4;
    i64 r = mod_floor(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
}

/// An order O = Z + f*O_K, expressed as Delta = f^2 * Delta_K.
struct OrderSpec {
    Discriminant delta_k;  // fundamental
    i64 conductor;         // f >= 1
    Discriminant delta;    // f^2 * delta_k
};

/// Unique decomposition Delta = f^2 * Delta_K with Delta_K fundamental:
/// f is the largest positive integer with f^2 | Delta and Delta/f^2 fundamental.
inline OrderSpec factor_discriminant(Discriminant d) {
    i64 delta = d.value();
    i64 best_f = 1;
    for (i64 f = 1; f * f <= -delta; ++f)
        if (delta % (f * f) == 0 && is_fundamental(delta / (f * f)))
            best_f = f;
    i64 dk = delta / (best_f * best_f);
    if (!is_fundamental(dk))
        throw std::logic_error("factor_discriminant: no fundamental part found");
    return OrderSpec{Discriminant(dk), best_f, d};
}

/// Kronecker symbol (d/p) for p prime.  At p = 2: 0 if d even, +1 if
/// d = 1 mod 8, -1 if d = 5 mod 8.
inline int kronecker(i64 d, i64 p) {
    if (!is_prime(p)) throw std::invalid_argument("kronecker: p must be prime");
    if (p == 2) {
        if (d % 2 == 0) return 0;
        i64 r = mod_floor(d, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    i64 a = mod_floor(d, p);
    if (a == 0) return 0;
    // Euler criterion: a^((p-1)/2) mod p
    i64 result = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;
}

inline int kronecker(Discriminant d, i64 p) { return kronecker(d.value(), p); }

/// #O^x: 6 for Delta = -3, 4 for Delta = -4, else 2.
inline i64 unit_group_order(Discriminant d) {
    if (d.value() == -3) return 6;
    if (d.value() == -4) return 4;
    return 2;
}

/// Class number of the order of discriminant d, by counting primitive
/// reduced binary quadratic forms ax^2 + bxy + cy^2 of discriminant d.
inline i64 class_number(Discriminant d) {
    i64 delta = d.value();
    i64 count = 0;
    // reduction forces 3a^2 <= |delta|
    for (i64 a = 1; checked_mul(3, checked_mul(a, a)) <= -delta; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            i64 num = checked_mul(b, b) - delta;
            i64 den = 4 * a;
            if (num % den != 0) continue;
            i64 c = num / den;
            if (c < a) continue;
            if (b < 0 && (std::abs(b) == a || a == c)) continue;  // normalize boundary forms
            if (std::gcd(std::gcd(a, b), c) != 1) continue;       // primitive only
            ++count;
        }
    }
    return count;
}

} // namespace cmcartan
