#include "potkit/pseudoinverse.hpp"

namespace potkit {

namespace {

int rank_from_coeffs(const std::vector<Poly>& coeffs) {
    int r = 0;
    for (std::size_t j = 1; j < coeffs.size(); ++j)
        if (!coeffs[j].is_zero()) r = static_cast<int>(j);
    return r;
}

}  // namespace

int generic_rank_of_symbol(const PolyMatrix& m) {
    if (m.is_zero()) return 0;
    return rank_from_coeffs(char_poly_coeffs(m * m.transpose()));
}

SymbolPseudoInverse pseudoinverse_symbol(const PolyMatrix& m) {
    const int nv = m.nvars();
    SymbolPseudoInverse out;
    CharPoly cp = faddeev_leverrier(m * m.transpose());
    out.char_coeffs = cp.coeffs;
    out.rank = rank_from_coeffs(cp.coeffs);

    if (out.rank == 0) {
        out.numerator = PolyMatrix(m.cols(), m.rows(), nv);
        out.denominator = Poly::constant(nv, Rational(1));
        out.s_matrix = PolyMatrix(m.rows(), m.rows(), nv);
        out.a_r_raw = Poly::constant(nv, Rational(1));  // a_0
        return out;
    }

    // S = M_r from the Faddeev-LeVerrier recursion.
    out.s_matrix = cp.aux[static_cast<std::size_t>(out.rank - 1)];
    out.a_r_raw = cp.coeffs[static_cast<std::size_t>(out.rank)];
    out.numerator = (m.transpose() * out.s_matrix).scaled(Rational(-1));
    out.denominator = out.a_r_raw;

    // Flip both parts when the denominator's first canonical coefficient is
    // negative; the rational function is unchanged.
    if (out.denominator.terms().begin()->second < 0) {
        out.numerator = out.numerator.scaled(Rational(-1));
        out.denominator = -out.denominator;
    }
    return out;
}

}  // namespace potkit
