#include "potkit/poly.hpp"

#include "potkit/errors.hpp"

namespace potkit {

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(MultiIndex(nvars), c);
    return p;
}

Poly Poly::monomial(const MultiIndex& alpha, const Rational& c) {
    Poly p(alpha.size());
    p.add_term(alpha, c);
    return p;
}

Poly Poly::variable(int nvars, int axis, int power) {
    return monomial(MultiIndex::unit(nvars, axis, power), Rational(1));
}

void Poly::add_term(const MultiIndex& alpha, const Rational& c) {
    if (c == 0) return;
    if (alpha.size() != nvars_) throw DimensionMismatch("multi-index length != nvars");
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Poly::coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::operator+(const Poly& rhs) const {
    Poly out(*this);
    out += rhs;
    return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (nvars_ != rhs.nvars_) throw DimensionMismatch("poly nvars mismatch in +");
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, c);
    return *this;
}

Poly Poly::operator-(const Poly& rhs) const {
    Poly out(*this);
    out -= rhs;
    return out;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (nvars_ != rhs.nvars_) throw DimensionMismatch("poly nvars mismatch in -");
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, -c);
    return *this;
}

Poly Poly::operator*(const Poly& rhs) const {
    if (nvars_ != rhs.nvars_) throw DimensionMismatch("poly nvars mismatch in *");
    Poly out(nvars_);
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : rhs.terms_) out.add_term(a + b, ca * cb);
    return out;
}

Poly Poly::operator-() const { return scaled(Rational(-1)); }

Poly Poly::scaled(const Rational& c) const {
    Poly out(nvars_);
    if (c == 0) return out;
    for (const auto& [alpha, coeff] : terms_) out.terms_.emplace(alpha, coeff * c);
    return out;
}

Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();  // grlex order: last term has max degree
}

std::optional<int> Poly::homogeneous_degree() const {
    if (terms_.empty()) return 0;
    const int deg = terms_.begin()->first.degree();
    if (terms_.rbegin()->first.degree() != deg) return std::nullopt;
    return deg;
}

Rational Poly::eval(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw DimensionMismatch("evaluation point length != nvars");
    Rational acc(0);
    for (const auto& [alpha, coeff] : terms_) {
        Rational term = coeff;
        for (int i = 0; i < nvars_; ++i)
            if (alpha[i] > 0) term *= pow_rational(point[static_cast<std::size_t>(i)],
                                                   static_cast<unsigned>(alpha[i]));
        acc += term;
    }
    return acc;
}

double Poly::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw DimensionMismatch("evaluation point length != nvars");
    double acc = 0.0;
    for (const auto& [alpha, coeff] : terms_) {
        double term = coeff.get_d();
        for (int i = 0; i < nvars_; ++i)
            for (int e = 0; e < alpha[i]; ++e) term *= point[static_cast<std::size_t>(i)];
        acc += term;
    }
    return acc;
}

double Poly::coefficient_l1() const {
    double acc = 0.0;
    for (const auto& [alpha, coeff] : terms_) acc += std::abs(coeff.get_d());
    return acc;
}

std::string Poly::to_string(const std::string& var_prefix) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [alpha, coeff] : terms_) {
        Rational c = coeff;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += (c < 0) ? " - " : " + ";
            if (c < 0) c = -c;
        }
        first = false;
        std::string mono;
        for (int i = 0; i < nvars_; ++i) {
            if (alpha[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_prefix + std::to_string(i + 1);
            if (alpha[i] > 1) mono += "^" + std::to_string(alpha[i]);
        }
        if (mono.empty()) {
            out += potkit::to_string(c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += potkit::to_string(c) + "*" + mono;
        }
    }
    return out;
}

}  // namespace potkit
