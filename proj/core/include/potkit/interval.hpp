#pragma once

#include <span>
#include <vector>

#include "potkit/poly.hpp"

namespace potkit {

// Closed interval with exact rational endpoints. Because the endpoints stay
// rational, interval evaluation of a rational polynomial is free of rounding;
// positivity of the lower bound is a proof, not a heuristic.
struct RatInterval {
    Rational lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rational point) : lo(point), hi(point) {}
    RatInterval(Rational lo, Rational hi) : lo(std::move(lo)), hi(std::move(hi)) {}

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }

    RatInterval operator+(const RatInterval& r) const { return {lo + r.lo, hi + r.hi}; }
    RatInterval operator*(const RatInterval& r) const;
    RatInterval power(unsigned e) const;  // tight for even powers straddling zero
    RatInterval scaled(const Rational& c) const {
        return c >= 0 ? RatInterval{lo * c, hi * c} : RatInterval{hi * c, lo * c};
    }
};

// Natural interval extension: sum over terms of coeff * prod xi_i^(e_i).
RatInterval interval_eval(const Poly& p, std::span<const RatInterval> box);

}  // namespace potkit
