#include "potkit/diffop.hpp"

#include "potkit/errors.hpp"

namespace potkit {

void DiffOp::add_coeff(const MultiIndex& alpha, const RatMatrix& m) {
    if (alpha.size() != n) throw DimensionMismatch("multi-index length != space dimension");
    if (alpha.degree() != order) throw DegreeMismatch("|alpha| != operator order");
    if (m.rows() != dim_to || m.cols() != dim_from)
        throw DimensionMismatch("coefficient matrix must be dim_to x dim_from");
    if (m.is_zero()) return;
    auto [it, inserted] = coeffs.emplace(alpha, m);
    if (!inserted) {
        it->second = it->second + m;
        if (it->second.is_zero()) coeffs.erase(it);
    }
}

PolyMatrix symbol_of(const DiffOp& op) {
    PolyMatrix sym(op.dim_to, op.dim_from, op.n);
    for (const auto& [alpha, m] : op.coeffs)
        for (int i = 0; i < op.dim_to; ++i)
            for (int j = 0; j < op.dim_from; ++j)
                sym.at(i, j).add_term(alpha, m.at(i, j));
    return sym;
}

DiffOp op_from_symbol(const PolyMatrix& m, std::optional<int> expected_degree) {
    std::optional<int> degree;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const Poly& p = m.at(i, j);
            if (p.is_zero()) continue;
            auto d = p.homogeneous_degree();
            if (!d) throw NonHomogeneous("symbol entry has mixed degrees");
            if (degree && *degree != *d) throw NonHomogeneous("symbol entries of differing degree");
            degree = d;
        }
    if (!degree) degree = expected_degree.value_or(0);  // zero matrix: declared order
    if (expected_degree && *expected_degree != *degree)
        throw DegreeMismatch("symbol degree differs from expected order");

    DiffOp op;
    op.n = m.nvars();
    op.order = *degree;
    op.dim_from = m.cols();
    op.dim_to = m.rows();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [alpha, c] : m.at(i, j).terms()) {
                RatMatrix coeff(op.dim_to, op.dim_from);
                coeff.at(i, j) = c;
                op.add_coeff(alpha, coeff);
            }
    return op;
}

std::string describe(const DiffOp& op) {
    return "order " + std::to_string(op.order) + " operator on R^" + std::to_string(op.n) +
           ", " + std::to_string(op.dim_from) + " -> " + std::to_string(op.dim_to) +
           " components, " + std::to_string(op.coeffs.size()) + " coefficient tensors";
}

}  // namespace potkit
