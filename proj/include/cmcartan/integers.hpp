#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmcartan {

using i64 = std::int64_t;

/// Thrown when a 64-bit intermediate would overflow.  All arithmetic in the
/// library goes through these helpers so failures are loud, never wrapped.
struct overflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct bounds_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("integer overflow in multiply: " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("integer overflow in add");
    return r;
}

/// Least nonnegative residue of a mod m (m > 0).
inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Exact quotient; throws if b does not divide a.
inline i64 exact_div(i64 a, i64 b, const char* what = "exact_div") {
    if (b == 0 || a % b != 0)
        throw std::logic_error(std::string(what) + ": inexact division " + std::to_string(a) + " / " + std::to_string(b));
    return a / b;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Sorted trial-division factorization; 1 maps to the empty product.
inline std::vector<std::pair<i64, int>> prime_power_decomposition(i64 n) {
    if (n < 1) throw std::invalid_argument("prime_power_decomposition: n must be >= 1");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline i64 euler_phi(i64 n) {
    i64 phi = 1;
    for (auto [p, e] : prime_power_decomposition(n)) {
        i64 pe = 1;
        for (int i = 1; i < e; ++i) pe = checked_mul(pe, p);
        phi = checked_mul(phi, checked_mul(pe, p - 1));
    }
    return phi;
}

inline i64 ipow(i64 base, int exp) {
    i64 r = 1;
    while (exp-- > 0) r = checked_mul(r, base);
    return r;
}

/// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Inverse of a mod m; precondition gcd(a, m) = 1.
inline i64 mod_inverse(i64 a, i64 m) {
    i64 x, y;
    i64 g = ext_gcd(mod_floor(a, m), m, x, y);
    if (g != 1) throw std::logic_error("mod_inverse: element not invertible");
    return mod_floor(x, m);
}

} // namespace cmcartan
