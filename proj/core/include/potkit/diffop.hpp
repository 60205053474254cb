#pragma once

#include <map>
#include <optional>
#include <string>

#include "potkit/multi_index.hpp"
#include "potkit/poly_matrix.hpp"
#include "potkit/rat_matrix.hpp"

namespace potkit {

// k-homogeneous constant-coefficient operator  A w = sum_{|alpha|=k} d^alpha A_alpha w
// mapping fields with dim_from components to fields with dim_to components.
// Coefficient tensors are the primary representation; the symbol is a derived view.
struct DiffOp {
    int n = 0;         // space dimension
    int order = 0;     // k >= 0
    int dim_from = 0;  // components of the source space (W for annihilators, V for potentials)
    int dim_to = 0;
    std::map<MultiIndex, RatMatrix, GrlexLess> coeffs;  // only nonzero A_alpha stored

    bool is_zero() const { return coeffs.empty(); }

    // Adds (accumulates) a coefficient matrix; throws if |alpha| != order or shape is wrong.
    void add_coeff(const MultiIndex& alpha, const RatMatrix& m);
};

// Symbol map: entry (i,j) = sum_alpha (A_alpha)_{ij} xi^alpha, a dim_to x dim_from
// matrix of degree-k homogeneous polynomials.
PolyMatrix symbol_of(const DiffOp& op);

// Inverse of symbol_of. Every entry must be homogeneous of one common degree
// (or zero). When expected_degree is given, a differing common degree is an
// error; a zero matrix takes expected_degree (or 0).
DiffOp op_from_symbol(const PolyMatrix& m, std::optional<int> expected_degree = std::nullopt);

std::string describe(const DiffOp& op);

}  // namespace potkit
