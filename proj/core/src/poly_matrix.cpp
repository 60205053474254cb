#include "potkit/poly_matrix.hpp"

#include <algorithm>

#include "potkit/errors.hpp"

namespace potkit {

PolyMatrix PolyMatrix::identity(int n, int nvars) {
    PolyMatrix m(n, n, nvars);
    for (int i = 0; i < n; ++i) m.at(i, i) = Poly::constant(nvars, Rational(1));
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& rhs) const {
    if (cols_ != rhs.rows_ || nvars_ != rhs.nvars_)
        throw DimensionMismatch("PolyMatrix product shape mismatch");
    PolyMatrix out(rows_, rhs.cols_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Poly& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < rhs.cols_; ++j) {
                if (rhs.at(k, j).is_zero()) continue;
                out.at(i, j) += a * rhs.at(k, j);
            }
        }
    return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || nvars_ != rhs.nvars_)
        throw DimensionMismatch("PolyMatrix sum shape mismatch");
    PolyMatrix out(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] += rhs.e_[i];
    return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& rhs) const {
    return *this + rhs.scaled(Rational(-1));
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix out(cols_, rows_, nvars_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

PolyMatrix PolyMatrix::scaled(const Poly& p) const {
    PolyMatrix out(rows_, cols_, nvars_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] * p;
    return out;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
    PolyMatrix out(*this);
    for (auto& p : out.e_) p = p.scaled(c);
    return out;
}

Poly PolyMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace of non-square PolyMatrix");
    Poly t(nvars_);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

namespace {

void subsets_of(int n, int d, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<std::size_t>(d));
    // Lexicographic enumeration of d-subsets of {0..n-1}.
    for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = d - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

std::vector<Poly> PolyMatrix::minors(int d) const {
    if (d < 1 || d > std::min(rows_, cols_)) throw DimensionMismatch("minor order out of range");
    std::vector<std::vector<int>> rsets, csets;
    subsets_of(rows_, d, rsets);
    subsets_of(cols_, d, csets);
    std::vector<Poly> out;
    out.reserve(rsets.size() * csets.size());
    for (const auto& rs : rsets)
        for (const auto& cs : csets) {
            PolyMatrix sub(d, d, nvars_);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    sub.at(i, j) = at(rs[static_cast<std::size_t>(i)], cs[static_cast<std::size_t>(j)]);
            out.push_back(sub.determinant());
        }
    return out;
}

Poly PolyMatrix::determinant() const {
    if (!is_square()) throw DimensionMismatch("determinant of non-square PolyMatrix");
    if (rows_ == 0) return Poly::constant(nvars_, Rational(1));
    if (rows_ == 1) return at(0, 0);
    Poly det(nvars_);
    for (int j = 0; j < cols_; ++j) {
        if (at(0, j).is_zero()) continue;
        PolyMatrix sub(rows_ - 1, cols_ - 1, nvars_);
        for (int i = 1; i < rows_; ++i) {
            int cj = 0;
            for (int k = 0; k < cols_; ++k) {
                if (k == j) continue;
                sub.at(i - 1, cj++) = at(i, k);
            }
        }
        Poly term = at(0, j) * sub.determinant();
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

RatMatrix PolyMatrix::eval(std::span<const Rational> point) const {
    RatMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j).eval(point);
    return out;
}

std::pair<PolyMatrix, Rational> PolyMatrix::content_normalized() const {
    Integer num_gcd(0), den_lcm(1);
    for (const auto& p : e_)
        for (const auto& [alpha, c] : p.terms()) {
            Integer num = c.get_num();
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), num.get_mpz_t());
            Integer den = c.get_den();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
        }
    if (num_gcd == 0) return {*this, Rational(1)};
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    PolyMatrix out = scaled(Rational(1) / content);
    return {out, content};
}

int PolyMatrix::max_degree() const {
    int deg = -1;
    for (const auto& p : e_) deg = std::max(deg, p.total_degree());
    return deg;
}

std::string PolyMatrix::to_string(const std::string& var_prefix) const {
    std::string out = "[";
    for (int i = 0; i < rows_; ++i) {
        out += "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) out += ", ";
            out += at(i, j).to_string(var_prefix);
        }
        out += "]";
        if (i + 1 < rows_) out += ", ";
    }
    return out + "]";
}

}  // namespace potkit
