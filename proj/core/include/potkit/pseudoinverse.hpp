#pragma once

#include "potkit/charpoly.hpp"
#include "potkit/poly_matrix.hpp"

namespace potkit {

// Moore-Penrose pseudo-inverse of a polynomial matrix M as a ratio of
// polynomials, via Decell's closed form built on the characteristic
// coefficients a_j of H = M M* and the generic rank r = max{ j : a_j != 0 }:
//
//   M^+ = -(1/a_r) M* S,   S = a_0 H^{r-1} + a_1 H^{r-2} + ... + a_{r-1} Id.
//
// numerator/denominator are sign-normalized so the denominator's leading
// (first canonical) coefficient is positive; a_r_raw and s_matrix keep the
// unnormalized ingredients for the synthesis formulas. For r = 0 the
// pseudo-inverse is the zero matrix with denominator 1.
struct SymbolPseudoInverse {
    PolyMatrix numerator;          // cols(M) x rows(M)
    Poly denominator;
    int rank = 0;                  // generic rank r
    std::vector<Poly> char_coeffs; // a_0..a_N of H = M M*
    PolyMatrix s_matrix;           // S as above (identity-free for r = 0)
    Poly a_r_raw;                  // unnormalized a_r
};

SymbolPseudoInverse pseudoinverse_symbol(const PolyMatrix& m);

// Generic rank of a polynomial matrix: r = max{ j : a_j not identically zero }.
int generic_rank_of_symbol(const PolyMatrix& m);

}  // namespace potkit
