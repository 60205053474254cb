#pragma once

#include <numeric>
#include <string>
#include <vector>

namespace potkit {

// Derivative/monomial multi-index alpha with |alpha| = sum of exponents.
struct MultiIndex {
    std::vector<int> exponents;

    MultiIndex() = default;
    explicit MultiIndex(int nvars) : exponents(static_cast<std::size_t>(nvars), 0) {}
    explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}

    int size() const { return static_cast<int>(exponents.size()); }
    int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
    int operator[](int i) const { return exponents[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return exponents[static_cast<std::size_t>(i)]; }

    bool operator==(const MultiIndex& other) const = default;

    MultiIndex operator+(const MultiIndex& other) const {
        MultiIndex out(*this);
        for (int i = 0; i < size(); ++i) out[i] += other[i];
        return out;
    }

    static MultiIndex unit(int nvars, int axis, int power = 1) {
        MultiIndex out(nvars);
        out[axis] = power;
        return out;
    }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < size(); ++i) {
            if (i) s += ",";
            s += std::to_string(exponents[static_cast<std::size_t>(i)]);
        }
        return s + ")";
    }
};

// Graded-lexicographic order: total degree first, lexicographic on exponents to
// break ties. Fixes the canonical iteration order of every polynomial.
struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        const int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exponents < b.exponents;
    }
};

}  // namespace potkit
