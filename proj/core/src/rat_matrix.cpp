#include "potkit/rat_matrix.hpp"

#include "potkit/errors.hpp"

namespace potkit {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("RatMatrix product shape mismatch");
    RatMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("RatMatrix sum shape mismatch");
    RatMatrix out(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] += rhs.e_[i];
    return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& rhs) const {
    return *this + rhs.scaled(Rational(-1));
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

RatMatrix RatMatrix::scaled(const Rational& c) const {
    RatMatrix out(*this);
    for (auto& v : out.e_) v *= c;
    return out;
}

int RatMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    // Clear denominators row by row; row scaling does not change rank.
    std::vector<std::vector<Integer>> m(static_cast<std::size_t>(rows_),
                                        std::vector<Integer>(static_cast<std::size_t>(cols_)));
    for (int i = 0; i < rows_; ++i) {
        Integer lcm(1);
        for (int j = 0; j < cols_; ++j) {
            Integer den = at(i, j).get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        for (int j = 0; j < cols_; ++j) {
            Rational scaled = at(i, j) * Rational(lcm);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = scaled.get_num();
        }
    }

    int rank = 0;
    Integer prev(1);
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows_; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot)]);
        const Integer pv = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int i = rank + 1; i < rows_; ++i) {
            auto& row = m[static_cast<std::size_t>(i)];
            const Integer f = row[static_cast<std::size_t>(col)];
            for (int j = col; j < cols_; ++j) {
                const auto& prow = m[static_cast<std::size_t>(rank)];
                Integer v = row[static_cast<std::size_t>(j)] * pv -
                            f * prow[static_cast<std::size_t>(j)];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                row[static_cast<std::size_t>(j)] = v;
            }
        }
        prev = pv;
        ++rank;
    }
    return rank;
}

std::string RatMatrix::to_string() const {
    std::string out = "[";
    for (int i = 0; i < rows_; ++i) {
        out += "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) out += ", ";
            out += potkit::to_string(at(i, j));
        }
        out += "]";
        if (i + 1 < rows_) out += ", ";
    }
    return out + "]";
}

}  // namespace potkit
