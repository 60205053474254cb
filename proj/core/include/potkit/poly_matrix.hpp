#pragma once

#include <span>
#include <utility>
#include <vector>

#include "potkit/poly.hpp"
#include "potkit/rat_matrix.hpp"

namespace potkit {

// Dense matrix of sparse rational polynomials; carries symbols A(xi), B(xi),
// H(xi) = A(xi)A*(xi) and friends. Dimensions are fixed at construction.
class PolyMatrix {
  public:
    PolyMatrix() : rows_(0), cols_(0), nvars_(0) {}
    PolyMatrix(int rows, int cols, int nvars)
        : rows_(rows),
          cols_(cols),
          nvars_(nvars),
          e_(static_cast<std::size_t>(rows) * cols, Poly(nvars)) {}

    static PolyMatrix identity(int n, int nvars);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    const Poly& at(int i, int j) const { return e_[idx(i, j)]; }
    Poly& at(int i, int j) { return e_[idx(i, j)]; }

    PolyMatrix operator*(const PolyMatrix& rhs) const;
    PolyMatrix operator+(const PolyMatrix& rhs) const;
    PolyMatrix operator-(const PolyMatrix& rhs) const;
    PolyMatrix transpose() const;
    PolyMatrix scaled(const Poly& p) const;
    PolyMatrix scaled(const Rational& c) const;
    bool operator==(const PolyMatrix& rhs) const = default;

    Poly trace() const;

    // All d x d minors, ordered by lexicographic row subset then column subset.
    std::vector<Poly> minors(int d) const;

    // Determinant by cofactor expansion along the first row. Exponential in the
    // size; fine for the <= 4 x 4 matrices this toolkit meets.
    Poly determinant() const;

    RatMatrix eval(std::span<const Rational> point) const;

    // Divides all entries by the positive rational content (gcd of numerators /
    // lcm of denominators over every coefficient); returns the extracted scalar.
    // The zero matrix is returned unchanged with scalar 1.
    std::pair<PolyMatrix, Rational> content_normalized() const;

    // Max total degree over entries; -1 if zero matrix.
    int max_degree() const;

    std::string to_string(const std::string& var_prefix = "xi") const;

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_, cols_, nvars_;
    std::vector<Poly> e_;
};

}  // namespace potkit
