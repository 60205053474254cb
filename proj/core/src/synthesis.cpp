#include "potkit/synthesis.hpp"

#include "potkit/charpoly.hpp"
#include "potkit/errors.hpp"
#include "potkit/rng.hpp"

namespace potkit {

namespace {

DiffOp identity_op(int n, int dim) {
    DiffOp op;
    op.n = n;
    op.order = 0;
    op.dim_from = dim;
    op.dim_to = dim;
    op.add_coeff(MultiIndex(n), RatMatrix::identity(dim));
    return op;
}

void throw_if_falsified(const DiffOp& op, const RankReport& report, const char* what) {
    auto witness = falsify_constant_rank(op, report, kSynthesisFalsifyBudget,
                                         kSynthesisFalsifySeed);
    if (!witness) return;
    std::string msg = std::string(what) + ": rank drops at xi = (";
    for (std::size_t i = 0; i < witness->size(); ++i) {
        if (i) msg += ",";
        msg += to_string((*witness)[i]);
    }
    throw NotConstantRank(msg + ")");
}

DiffOp finish_symbol(const PolyMatrix& raw, int expected_order, const char* what) {
    auto [normalized, content] = raw.content_normalized();
    (void)content;
    for (int i = 0; i < normalized.rows(); ++i)
        for (int j = 0; j < normalized.cols(); ++j) {
            const Poly& p = normalized.at(i, j);
            if (p.is_zero()) continue;
            auto d = p.homogeneous_degree();
            if (!d || *d != expected_order)
                throw std::logic_error(std::string(what) + ": non-homogeneous synthesis result");
        }
    return op_from_symbol(normalized, expected_order);
}

}  // namespace

DiffOp potential_of(const DiffOp& a, bool check_rank) {
    RankReport report = generic_rank(a);
    const int r = report.generic_rank;
    if (r == 0) return identity_op(a.n, a.dim_from);  // ker A(xi) = W everywhere
    if (check_rank) throw_if_falsified(a, report, "potential_of");

    PolyMatrix sym = symbol_of(a);
    CharPoly cp = faddeev_leverrier(sym * sym.transpose());
    const Poly& a_r = cp.coeffs[static_cast<std::size_t>(r)];
    const PolyMatrix& s = cp.aux[static_cast<std::size_t>(r - 1)];

    PolyMatrix b = sym.transpose() * s * sym;
    for (int i = 0; i < b.rows(); ++i) b.at(i, i) += a_r;

    return finish_symbol(b, 2 * a.order * r, "potential_of");
}

DiffOp annihilator_of(const DiffOp& b, bool check_rank) {
    RankReport report = generic_rank(b);
    const int r = report.generic_rank;
    if (r == 0) return identity_op(b.n, b.dim_to);  // im B(xi) = {0} = ker Id_W
    if (check_rank) throw_if_falsified(b, report, "annihilator_of");

    PolyMatrix sym = symbol_of(b);
    CharPoly cp = faddeev_leverrier(sym * sym.transpose());
    const Poly& a_r = cp.coeffs[static_cast<std::size_t>(r)];
    const PolyMatrix& s = cp.aux[static_cast<std::size_t>(r - 1)];

    // a_r Id_W + (BB*) S  =  a_r Id + sum_{i=0}^{r-1} a_i (BB*)^{r-i}
    PolyMatrix a_sym = (sym * sym.transpose()) * s;
    for (int i = 0; i < a_sym.rows(); ++i) a_sym.at(i, i) += a_r;

    return finish_symbol(a_sym, 2 * b.order * r, "annihilator_of");
}

VerifyOutcome verify_exact_pair(const DiffOp& a, const DiffOp& b, long sample_count,
                                std::uint64_t seed) {
    if (a.n != b.n) throw DimensionMismatch("verify_exact_pair: space dimensions differ");
    if (a.dim_from != b.dim_to)
        throw DimensionMismatch("verify_exact_pair: dim_from(A) must equal dim_to(B)");
    const int dim_w = a.dim_from;

    VerifyOutcome out;
    out.pair.annihilator = a;
    out.pair.potential = b;

    const PolyMatrix sym_a = symbol_of(a);
    const PolyMatrix sym_b = symbol_of(b);
    const PolyMatrix prod = sym_a * sym_b;
    for (int i = 0; i < prod.rows(); ++i)
        for (int j = 0; j < prod.cols(); ++j)
            if (!prod.at(i, j).is_zero()) {
                out.status = VerifyOutcome::Status::CompositionNonzero;
                out.bad_row = i;
                out.bad_col = j;
                out.bad_entry = prod.at(i, j);
                return out;
            }
    out.pair.symbolic_zero = true;

    Rng rng(seed);
    out.pair.rank_samples.reserve(static_cast<std::size_t>(sample_count));
    for (long s = 0; s < sample_count; ++s) {
        std::vector<Rational> xi(static_cast<std::size_t>(a.n));
        for (auto& c : xi) c = rng.rational_nonzero();
        RankSample sample;
        sample.xi = xi;
        sample.rank_a = sym_a.eval(std::span<const Rational>(xi)).rank();
        sample.rank_b = sym_b.eval(std::span<const Rational>(xi)).rank();
        out.pair.rank_samples.push_back(sample);
        if (sample.rank_a + sample.rank_b != dim_w) {
            out.status = VerifyOutcome::Status::RankSumFailure;
            out.bad_xi = xi;
            out.bad_rank_a = sample.rank_a;
            out.bad_rank_b = sample.rank_b;
            return out;
        }
    }
    return out;
}

}  // namespace potkit
