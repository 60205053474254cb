#include "potkit/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace potkit {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// S_l(t) = sum_{k=0..l} C(l+k,k) C(2l+1,l-k) (-1)^k t^{l+1+k}; the polynomial
// smoothstep with S(0)=0, S(1)=1 and l vanishing derivatives at both ends.
std::vector<double> smoothstep_poly(int l) {
    std::vector<double> c(static_cast<std::size_t>(2 * l + 2), 0.0);
    for (int k = 0; k <= l; ++k) {
        const double v = binom(l + k, k) * binom(2 * l + 1, l - k) * ((k % 2) ? -1.0 : 1.0);
        c[static_cast<std::size_t>(l + 1 + k)] = v;
    }
    return c;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

double poly_eval(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

}  // namespace

CutoffProfile CutoffProfile::make(double margin, int order) {
    if (!(margin > 0.0 && margin < 0.5))
        throw std::invalid_argument("cutoff margin must lie in (0, 1/2)");
    if (order < 0) throw std::invalid_argument("cutoff order must be non-negative");
    CutoffProfile p;
    p.margin_ = margin;
    p.order_ = order;
    p.smoothstep_coeffs_.push_back(smoothstep_poly(order));
    for (int j = 1; j <= order; ++j)
        p.smoothstep_coeffs_.push_back(poly_derivative(p.smoothstep_coeffs_.back()));

    // Realized constant C in |d^j rho| <= C margin^{-j}: the transition has
    // width margin/2, so C = max_j sup|S^(j)| * 2^j (sup scanned numerically).
    double c_max = 1.0;
    for (int j = 0; j <= order; ++j) {
        double sup = 0.0;
        for (int s = 0; s <= 4096; ++s)
            sup = std::max(sup, std::abs(poly_eval(p.smoothstep_coeffs_[static_cast<std::size_t>(j)],
                                                   s / 4096.0)));
        c_max = std::max(c_max, sup * std::pow(2.0, j));
    }
    p.deriv_constant_ = c_max;
    return p;
}

double CutoffProfile::value1d(double x) const {
    const double t = std::min(x, 1.0 - x);  // distance to the boundary of [0,1]
    if (t <= margin_ / 2.0) return 0.0;
    if (t >= margin_) return 1.0;
    return poly_eval(smoothstep_coeffs_[0], (t - margin_ / 2.0) / (margin_ / 2.0));
}

double CutoffProfile::deriv1d(double x, int j) const {
    if (j == 0) return value1d(x);
    if (j > order_) throw std::invalid_argument("cutoff derivative order exceeds smoothness");
    const bool reflected = x > 0.5;
    const double t = reflected ? 1.0 - x : x;
    if (t <= margin_ / 2.0 || t >= margin_) return 0.0;
    const double scale = std::pow(2.0 / margin_, j);
    double v = poly_eval(smoothstep_coeffs_[static_cast<std::size_t>(j)],
                         (t - margin_ / 2.0) / (margin_ / 2.0)) * scale;
    if (reflected && (j % 2)) v = -v;
    return v;
}

double CutoffProfile::value(std::span<const double> x) const {
    double v = 1.0;
    for (double c : x) {
        v *= value1d(c);
        if (v == 0.0) return 0.0;
    }
    return v;
}

double CutoffProfile::deriv(std::span<const double> x, const MultiIndex& beta) const {
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        v *= deriv1d(x[i], beta[static_cast<int>(i)]);
        if (v == 0.0) return 0.0;
    }
    return v;
}

bool CutoffProfile::in_dead_zone(std::span<const double> x) const {
    for (double c : x) {
        const double t = std::min(c, 1.0 - c);
        if (t <= margin_ / 2.0) return true;
    }
    return false;
}

}  // namespace potkit
