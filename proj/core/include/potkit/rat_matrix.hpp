#pragma once

#include <string>
#include <vector>

#include "potkit/rational.hpp"

namespace potkit {

// Dense matrix of exact rationals. Small sizes only; used for operator
// coefficients, symbol evaluations, and exact rank computations.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, Rational(0)) {}

    static RatMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_zero() const;

    const Rational& at(int i, int j) const { return e_[idx(i, j)]; }
    Rational& at(int i, int j) { return e_[idx(i, j)]; }

    RatMatrix operator*(const RatMatrix& rhs) const;
    RatMatrix operator+(const RatMatrix& rhs) const;
    RatMatrix operator-(const RatMatrix& rhs) const;
    RatMatrix transpose() const;
    RatMatrix scaled(const Rational& c) const;
    bool operator==(const RatMatrix& rhs) const = default;

    // Exact rank by fraction-free (Bareiss) elimination on the integer matrix
    // obtained by clearing row denominators.
    int rank() const;

    std::string to_string() const;

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_, cols_;
    std::vector<Rational> e_;
};

}  // namespace potkit
