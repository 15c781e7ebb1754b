// Arbitrary-precision integer/rational aliases and the small number-theory
// kit the rest of the library leans on.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace eudoxus {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Floor division, b > 0. cpp_int's operator/ truncates toward zero.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    return floor_div(a + b - 1, b);
}

inline Int floor_rat(const Rat& r) { return floor_div(numerator(r), denominator(r)); }
inline Int ceil_rat(const Rat& r) { return ceil_div(numerator(r), denominator(r)); }

inline Int pow_int(Int base, unsigned long exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline Int pow10(unsigned long exp) { return pow_int(10, exp); }

/// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return abs(a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Inverse of a modulo m, m >= 1. Throws when gcd(a, m) != 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    if (m == 1) return 0;
    Int x, y;
    Int g = ext_gcd(a % m, m, x, y);
    if (g != 1) throw error("mod_inverse: arguments are not coprime");
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

/// Deterministic Miller-Rabin for desk-scale inputs (first 13 prime bases,
/// deterministic below 3.3e24).
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned long s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = boost::multiprecision::powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long i = 0; i + 1 < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace eudoxus
