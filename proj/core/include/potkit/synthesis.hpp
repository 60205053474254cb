#pragma once

#include <cstdint>
#include <vector>

#include "potkit/diffop.hpp"
#include "potkit/rank_analysis.hpp"

namespace potkit {

struct RankSample {
    std::vector<Rational> xi;
    int rank_a = 0;
    int rank_b = 0;
};

// An (annihilator, potential) pair with the evidence that ker A(xi) = im B(xi):
// the symbolic identity A(xi)B(xi) = 0 plus exact rank-sum samples
// rank A(xi) + rank B(xi) = dim W.
struct ExactPair {
    DiffOp annihilator;
    DiffOp potential;
    bool symbolic_zero = false;
    std::vector<RankSample> rank_samples;
};

struct VerifyOutcome {
    enum class Status { Ok, CompositionNonzero, RankSumFailure };
    Status status = Status::Ok;
    ExactPair pair;
    // CompositionNonzero details
    int bad_row = -1, bad_col = -1;
    Poly bad_entry;
    // RankSumFailure details
    std::vector<Rational> bad_xi;
    int bad_rank_a = -1, bad_rank_b = -1;

    bool ok() const { return status == Status::Ok; }
};

// Potential synthesis, B(xi) = a_r(xi) Id_W + A*(xi) S(xi) A(xi), the polynomial
// expansion of a_r (Id - A^+ A); content-normalized, homogeneous of order 2kr.
// The r = 0 branch returns the identity operator of order 0. When check_rank is
// set, a bounded falsification search runs first and a found witness throws
// NotConstantRank.
DiffOp potential_of(const DiffOp& a, bool check_rank = true);

// Annihilator synthesis for a potential B, A(xi) = a_r Id_W + sum_i a_i (BB*)^{r-i},
// the expansion of a_r (Id - B B^+); order 2lr.
DiffOp annihilator_of(const DiffOp& b, bool check_rank = true);

// Symbolic composition check plus exact rank-sum sampling at random nonzero
// rational frequencies (numerators and denominators in [-100,100] \ {0}).
VerifyOutcome verify_exact_pair(const DiffOp& a, const DiffOp& b, long sample_count,
                                std::uint64_t seed);

// Internal budget/seed used by the check_rank pre-pass of the synthesizers.
inline constexpr long kSynthesisFalsifyBudget = 200;
inline constexpr std::uint64_t kSynthesisFalsifySeed = 0x5eedULL;

}  // namespace potkit
