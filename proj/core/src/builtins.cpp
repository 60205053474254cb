#include "potkit/builtins.hpp"

#include "potkit/errors.hpp"

namespace potkit {

namespace {

RatMatrix unit_entry(int rows, int cols, int i, int j, const Rational& v = Rational(1)) {
    RatMatrix m(rows, cols);
    m.at(i, j) = v;
    return m;
}

DiffOp make_op(int n, int order, int dim_from, int dim_to) {
    DiffOp op;
    op.n = n;
    op.order = order;
    op.dim_from = dim_from;
    op.dim_to = dim_to;
    return op;
}

DiffOp make_grad_scalar(int n) {
    DiffOp op = make_op(n, 1, 1, n);
    for (int i = 0; i < n; ++i) op.add_coeff(MultiIndex::unit(n, i), unit_entry(n, 1, i, 0));
    return op;
}

DiffOp make_grad_vector(int n) {
    // u: R^n -> R^n; output row-major Jacobian, component (i,j) = d_j u_i.
    DiffOp op = make_op(n, 1, n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            op.add_coeff(MultiIndex::unit(n, j), unit_entry(n * n, n, i * n + j, i));
    return op;
}

DiffOp make_div(int n) {
    DiffOp op = make_op(n, 1, n, 1);
    for (int i = 0; i < n; ++i) op.add_coeff(MultiIndex::unit(n, i), unit_entry(1, n, 0, i));
    return op;
}

DiffOp make_curl3d() {
    // (curl u)_i = eps_{ijk} d_j u_k, right-handed convention.
    DiffOp op = make_op(3, 1, 3, 3);
    const int eps[3][2][2] = {{{1, 2}, {2, 1}}, {{2, 0}, {0, 2}}, {{0, 1}, {1, 0}}};
    for (int i = 0; i < 3; ++i) {
        op.add_coeff(MultiIndex::unit(3, eps[i][0][0]),
                     unit_entry(3, 3, i, eps[i][0][1], Rational(1)));
        op.add_coeff(MultiIndex::unit(3, eps[i][1][0]),
                     unit_entry(3, 3, i, eps[i][1][1], Rational(-1)));
    }
    return op;
}

DiffOp make_curl2d_rowwise() {
    // F: R^2 -> R^{2x2} row-major (F11,F12,F21,F22); row i |-> d_1 F_{i2} - d_2 F_{i1}.
    DiffOp op = make_op(2, 1, 4, 2);
    for (int i = 0; i < 2; ++i) {
        op.add_coeff(MultiIndex::unit(2, 0), unit_entry(2, 4, i, 2 * i + 1, Rational(1)));
        op.add_coeff(MultiIndex::unit(2, 1), unit_entry(2, 4, i, 2 * i, Rational(-1)));
    }
    return op;
}

DiffOp make_symgrad(int n) {
    // Components (i,j) with i <= j in lexicographic order; value (d_i u_j + d_j u_i)/2.
    const int m = n * (n + 1) / 2;
    DiffOp op = make_op(n, 1, n, m);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i == j) {
                op.add_coeff(MultiIndex::unit(n, i), unit_entry(m, n, row, i));
            } else {
                op.add_coeff(MultiIndex::unit(n, i), unit_entry(m, n, row, j, Rational(1, 2)));
                op.add_coeff(MultiIndex::unit(n, j), unit_entry(m, n, row, i, Rational(1, 2)));
            }
            ++row;
        }
    return op;
}

DiffOp make_laplacian(int n) {
    DiffOp op = make_op(n, 2, 1, 1);
    for (int i = 0; i < n; ++i) op.add_coeff(MultiIndex::unit(n, i, 2), unit_entry(1, 1, 0, 0));
    return op;
}

DiffOp make_zero(int n) {
    return make_op(n, 1, 1, 1);
}

}  // namespace

DiffOp builtin(const std::string& name, int n) {
    if (n < 1) throw DimensionMismatch("builtin: dimension must be positive");
    if (name == "grad_scalar") return make_grad_scalar(n);
    if (name == "grad_vector") return make_grad_vector(n);
    if (name == "div") return make_div(n);
    if (name == "curl3d") {
        if (n != 3) throw DimensionMismatch("curl3d requires n = 3");
        return make_curl3d();
    }
    if (name == "curl2d_rowwise") {
        if (n != 2) throw DimensionMismatch("curl2d_rowwise requires n = 2");
        return make_curl2d_rowwise();
    }
    if (name == "symgrad") return make_symgrad(n);
    if (name == "laplacian") return make_laplacian(n);
    if (name == "zero") return make_zero(n);
    throw std::invalid_argument("unknown builtin operator: " + name);
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "grad_scalar", "grad_vector", "div",       "curl3d",
        "curl2d_rowwise", "symgrad",  "laplacian", "zero"};
    return names;
}

}  // namespace potkit
