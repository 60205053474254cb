#pragma once

#include <gmpxx.h>

#include <string>

namespace potkit {

// All symbol algebra runs over exact arbitrary-precision rationals.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational_from_string(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) return Rational(0);  // caller validates separately
    q.canonicalize();
    return q;
}

// Canonical "p" or "p/q" with q > 0 and gcd(p, q) = 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational pow_rational(const Rational& base, unsigned exp) {
    Rational out(1);
    Rational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) out *= b;
        b *= b;
        e >>= 1u;
    }
    return out;
}

}  // namespace potkit
