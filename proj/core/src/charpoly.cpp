#include "potkit/charpoly.hpp"

#include "potkit/errors.hpp"

namespace potkit {

CharPoly faddeev_leverrier(const PolyMatrix& h) {
    if (!h.is_square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
    const int n = h.rows();
    const int nv = h.nvars();
    CharPoly out;
    out.coeffs.reserve(static_cast<std::size_t>(n) + 1);
    out.coeffs.push_back(Poly::constant(nv, Rational(1)));
    if (n == 0) return out;

    PolyMatrix m = PolyMatrix::identity(n, nv);
    for (int k = 1; k <= n; ++k) {
        out.aux.push_back(m);
        PolyMatrix hm = h * m;
        // a_k = -tr(H*M_k)/k; the division by the step index is exact over Q.
        Poly a_k = hm.trace().scaled(Rational(-1, k));
        out.coeffs.push_back(a_k);
        if (k < n) {
            // M_{k+1} = H*M_k + a_k*Id
            for (int i = 0; i < n; ++i) hm.at(i, i) += a_k;
            m = std::move(hm);
        }
    }
    return out;
}

std::vector<Poly> char_poly_coeffs(const PolyMatrix& h) {
    return faddeev_leverrier(h).coeffs;
}

}  // namespace potkit
