#pragma once

#include <cstdint>
#include <optional>

#include "potkit/diffop.hpp"
#include "potkit/grid.hpp"
#include "potkit/pseudoinverse.hpp"
#include "potkit/transform.hpp"

namespace potkit {

// A k-th order operator acts per frequency as (2 pi i)^k A(xi); symbols are
// evaluated in exact rationals at the integer frequency, then converted.
TorusField apply_diffop(const DiffOp& op, const TorusField& w);
GridField apply_diffop(const DiffOp& op, const GridField& w);

// A-free projection multiplier P(xi) = Id - A^+(xi) A(xi), with A^+ from the
// exact Decell formula. The zero frequency passes through unchanged. Throws
// NotConstantRank if the denominator vanishes at a nonzero lattice frequency.
class AfreeProjector {
  public:
    explicit AfreeProjector(DiffOp a);

    const DiffOp& op() const { return op_; }
    int rank() const { return pinv_.rank; }

    // Exact rational projector at one frequency; P*P = P and P = P^T hold
    // exactly. xi must be nonzero if the operator is nonzero.
    RatMatrix projector_at(std::span<const Rational> xi) const;

    TorusField project(const TorusField& w) const;
    GridField project(const GridField& w) const;

  private:
    DiffOp op_;
    PolyMatrix sym_;
    SymbolPseudoInverse pinv_;
};

TorusField project_afree(const DiffOp& a, const TorusField& w);

// Float cross-check of the projection: pointwise pseudo-inverse from a Jacobi
// eigendecomposition of A(xi) A(xi)^T truncated at the generic rank.
TorusField project_afree_float(const DiffOp& a, const TorusField& w);

struct RecoverOptions {
    bool subtract_mean = false;
    // When the annihilator of the pair is known, the input is checked to be
    // A-free: ||A w|| <= afree_tol * ||w||.
    const DiffOp* annihilator = nullptr;
    double afree_tol = 1e-8;
    double mean_tol = 1e-10;
};

// Potential recovery (torus case): u-hat(xi) = (2 pi i)^{-l} B^+(xi) w-hat(xi)
// for xi != 0 and u-hat(0) = 0, so that B u = w - mean(w) for band-limited
// A-free w.
TorusField recover_potential(const DiffOp& b, const TorusField& w, const RecoverOptions& opts = {});

// (sum over xi of |w-hat(xi)|^2 (1 + 4 pi^2 |xi|^2)^s)^{1/2}
double sobolev_norm(const TorusField& w, int order);

// Hermitian Gaussian coefficients on {|xi|_inf <= band}; optionally zero mean.
// band must stay below the Nyquist index m/2.
TorusField random_field(int n, int d, int m, int band, bool zero_mean, std::uint64_t seed);

}  // namespace potkit
