#include "potkit/interval.hpp"

#include <algorithm>

#include "potkit/errors.hpp"

namespace potkit {

RatInterval RatInterval::operator*(const RatInterval& r) const {
    Rational a = lo * r.lo, b = lo * r.hi, c = hi * r.lo, d = hi * r.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

RatInterval RatInterval::power(unsigned e) const {
    if (e == 0) return RatInterval(Rational(1));
    if (e == 1) return *this;
    if (e % 2 == 0) {
        Rational alo = pow_rational(lo, e), ahi = pow_rational(hi, e);
        if (contains_zero()) return {Rational(0), std::max(alo, ahi)};
        return {std::min(alo, ahi), std::max(alo, ahi)};
    }
    return {pow_rational(lo, e), pow_rational(hi, e)};  // odd powers are monotone
}

RatInterval interval_eval(const Poly& p, std::span<const RatInterval> box) {
    if (static_cast<int>(box.size()) != p.nvars())
        throw DimensionMismatch("interval box length != nvars");
    RatInterval acc(Rational(0));
    for (const auto& [alpha, coeff] : p.terms()) {
        RatInterval mono(Rational(1));
        for (int i = 0; i < p.nvars(); ++i)
            if (alpha[i] > 0)
                mono = mono * box[static_cast<std::size_t>(i)].power(static_cast<unsigned>(alpha[i]));
        acc = acc + mono.scaled(coeff);
    }
    return acc;
}

}  // namespace potkit
