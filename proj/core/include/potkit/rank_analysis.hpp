#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "potkit/diffop.hpp"
#include "potkit/poly.hpp"

namespace potkit {

// Outcome of constant-rank analysis. e_r = (-1)^r a_r must be positive on the
// unit sphere for the rank to be constant; exact evaluation decides candidate
// zeros, interval subdivision proves positivity.
struct Certificate {
    enum class Kind { Certified, Falsified, Inconclusive };
    Kind kind = Kind::Inconclusive;
    int depth = 0;                   // max subdivision depth used (Certified)
    std::vector<Rational> witness;   // nonzero point with rank drop (Falsified)
    double min_sampled = 0.0;        // smallest exact sample of e_r seen (Inconclusive)
    long samples = 0;
};

struct RankReport {
    int generic_rank = 0;
    std::vector<Poly> char_coeffs;  // a_0..a_N of H = A(xi) A*(xi)
    Certificate certificate;        // Inconclusive with zero samples until certified
};

// Rank via the characteristic coefficients of H = A A*; r = 0 iff the symbol
// is identically zero.
RankReport generic_rank(const DiffOp& op);

// Searches coordinate subspaces and random rational points for a nonzero xi
// with rank A(xi) < r. A returned witness is exact: the rank drop is
// re-checked by fraction-free elimination. budget counts candidate points.
std::optional<std::vector<Rational>> falsify_constant_rank(const DiffOp& op,
                                                           const RankReport& report,
                                                           long budget, std::uint64_t seed);

// Branch-and-bound positivity proof for e_r on the faces of the max-norm unit
// cube (homogeneity reduces xi != 0 to that compact set). Exact rational
// interval arithmetic throughout; stops at max_depth with Inconclusive.
Certificate certify_constant_rank(const DiffOp& op, const RankReport& report, int max_depth = 12);

// e_r = (-1)^r a_r, the signed characteristic coefficient whose positivity away
// from zero characterizes constant rank.
Poly rank_indicator(const RankReport& report);

}  // namespace potkit
