#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "potkit/multi_index.hpp"
#include "potkit/rational.hpp"

namespace potkit {

// Sparse multivariate polynomial over exact rationals. Terms are kept in
// graded-lex order with no explicit zero coefficients, so equal polynomials
// have identical term sequences.
class Poly {
  public:
    using TermMap = std::map<MultiIndex, Rational, GrlexLess>;

    explicit Poly(int nvars = 0) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c);
    static Poly monomial(const MultiIndex& alpha, const Rational& c);
    static Poly variable(int nvars, int axis, int power = 1);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // Adds c * xi^alpha, erasing the term if the sum cancels.
    void add_term(const MultiIndex& alpha, const Rational& c);
    Rational coefficient(const MultiIndex& alpha) const;

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly operator-() const;
    Poly scaled(const Rational& c) const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);

    bool operator==(const Poly& rhs) const { return nvars_ == rhs.nvars_ && terms_ == rhs.terms_; }

    int total_degree() const;  // -1 for the zero polynomial
    // Degree k if every term has |alpha| = k; nullopt for mixed degrees.
    // The zero polynomial is homogeneous of every degree (returns 0).
    std::optional<int> homogeneous_degree() const;

    Rational eval(std::span<const Rational> point) const;
    double eval(std::span<const double> point) const;

    // Generic evaluation over any commutative ring with *, +=, and construction
    // from Rational via `convert`.
    template <typename T, typename Convert>
    T eval_as(std::span<const T> point, Convert&& convert, T zero) const {
        T acc = zero;
        for (const auto& [alpha, coeff] : terms_) {
            T term = convert(coeff);
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < alpha[i]; ++e) term = term * point[static_cast<std::size_t>(i)];
            acc = acc + term;
        }
        return acc;
    }

    // Sum of |coefficient| over terms, as a double; cheap magnitude proxy.
    double coefficient_l1() const;

    std::string to_string(const std::string& var_prefix = "xi") const;

  private:
    int nvars_;
    TermMap terms_;
};

Poly operator*(const Rational& c, const Poly& p);

}  // namespace potkit
