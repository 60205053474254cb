#pragma once

#include <span>
#include <vector>

#include "potkit/multi_index.hpp"

namespace potkit {

// Tensor-product smoothstep cutoff on the unit cube: exactly 0 within margin/2
// of the boundary, exactly 1 at distance >= margin, C^order smooth in between
// with |d^j rho| <= deriv_constant * margin^{-j} for j <= order.
class CutoffProfile {
  public:
    static CutoffProfile make(double margin, int order);

    double margin() const { return margin_; }
    int order() const { return order_; }
    double deriv_constant() const { return deriv_constant_; }

    // 1-D profile along one axis of [0,1].
    double value1d(double x) const;
    double deriv1d(double x, int j) const;

    // Tensor product over axes and its mixed derivatives.
    double value(std::span<const double> x) const;
    double deriv(std::span<const double> x, const MultiIndex& beta) const;

    // True when x lies in the zero band (all derivatives vanish identically).
    bool in_dead_zone(std::span<const double> x) const;

  private:
    double margin_ = 0.0;
    int order_ = 0;
    double deriv_constant_ = 0.0;
    // smoothstep_coeffs_[j] holds the coefficients of S^(j) on [0,1].
    std::vector<std::vector<double>> smoothstep_coeffs_;
};

}  // namespace potkit
