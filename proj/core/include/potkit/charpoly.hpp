#pragma once

#include <vector>

#include "potkit/poly_matrix.hpp"

namespace potkit {

// Coefficients of det(lambda*Id - H) = lambda^N + a_1 lambda^{N-1} + ... + a_N
// together with the Faddeev-LeVerrier auxiliary matrices
//   M_1 = Id,  M_{k+1} = H*M_k + a_k*Id,
// so aux[k-1] = M_k = sum_{i<k} a_i H^{k-1-i}. M_r is exactly the S matrix of
// the Decell pseudo-inverse formula.
struct CharPoly {
    std::vector<Poly> coeffs;       // a_0 = 1 .. a_N
    std::vector<PolyMatrix> aux;    // M_1 .. M_N
};

CharPoly faddeev_leverrier(const PolyMatrix& h);

// Convenience: coefficients only, a_0..a_N.
std::vector<Poly> char_poly_coeffs(const PolyMatrix& h);

}  // namespace potkit
