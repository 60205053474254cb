#include <doctest.h>

#include "oracles.hpp"
#include "potkit/charpoly.hpp"
#include "potkit/errors.hpp"
#include "potkit/poly_matrix.hpp"

using namespace potkit;

namespace {

Poly xi(int nvars, int axis, int power = 1) { return Poly::variable(nvars, axis, power); }

}  // namespace

TEST_SUITE("polymat") {

TEST_CASE("difference of squares") {
    Poly lhs = xi(2, 0) + xi(2, 1);
    Poly rhs = xi(2, 0) - xi(2, 1);
    CHECK(lhs * rhs == xi(2, 0, 2) - xi(2, 1, 2));
}

TEST_CASE("additive inverse cancels to the empty term set") {
    Rng rng(41);
    Poly p = test::random_poly(rng, 3, 3, 5);
    Poly zero = p + p.scaled(Rational(-1));
    CHECK(zero.is_zero());
    CHECK(zero.term_count() == 0);
}

TEST_CASE("rational coefficient product") {
    Poly a = xi(1, 0).scaled(Rational(1, 2));
    Poly b = xi(1, 0).scaled(Rational(2, 3));
    Poly expected = xi(1, 0, 2).scaled(Rational(1, 3));
    CHECK(a * b == expected);
}

TEST_CASE("poly arithmetic rejects mismatched variable counts") {
    CHECK_THROWS_AS(xi(2, 0) + xi(3, 0), DimensionMismatch);
    CHECK_THROWS_AS(xi(2, 0) * xi(3, 0), DimensionMismatch);
}

TEST_CASE("row times its transpose") {
    PolyMatrix row(1, 2, 2);
    row.at(0, 0) = xi(2, 0);
    row.at(0, 1) = xi(2, 1);
    PolyMatrix prod = row * row.transpose();
    CHECK(prod.rows() == 1);
    CHECK(prod.at(0, 0) == xi(2, 0, 2) + xi(2, 1, 2));
}

TEST_CASE("identity and transpose involution") {
    Rng rng(7);
    PolyMatrix m = test::random_poly_matrix(rng, 3, 3, 2, 2);
    CHECK(m * PolyMatrix::identity(3, 2) == m);
    CHECK(m.transpose().transpose() == m);
}

TEST_CASE("matrix product shape errors") {
    PolyMatrix a(2, 3, 2), b(2, 2, 2);
    CHECK_THROWS_AS(a * b, DimensionMismatch);
}

TEST_CASE("characteristic coefficients: 1x1 gradient square") {
    PolyMatrix h(1, 1, 2);
    h.at(0, 0) = xi(2, 0, 2) + xi(2, 1, 2);
    auto coeffs = char_poly_coeffs(h);
    CHECK(coeffs[0] == Poly::constant(2, Rational(1)));
    CHECK(coeffs[1] == -(xi(2, 0, 2) + xi(2, 1, 2)));
}

TEST_CASE("characteristic coefficients: rank-one 2x2") {
    PolyMatrix h(2, 2, 2);
    h.at(0, 0) = xi(2, 0, 2);
    h.at(0, 1) = xi(2, 0) * xi(2, 1);
    h.at(1, 0) = xi(2, 0) * xi(2, 1);
    h.at(1, 1) = xi(2, 1, 2);
    auto coeffs = char_poly_coeffs(h);
    CHECK(coeffs[1] == -(xi(2, 0, 2) + xi(2, 1, 2)));
    CHECK(coeffs[2].is_zero());
}

TEST_CASE("characteristic coefficients: 3x3 identity is (lambda-1)^3") {
    auto coeffs = char_poly_coeffs(PolyMatrix::identity(3, 1));
    CHECK(coeffs[1] == Poly::constant(1, Rational(-3)));
    CHECK(coeffs[2] == Poly::constant(1, Rational(3)));
    CHECK(coeffs[3] == Poly::constant(1, Rational(-1)));
}

TEST_CASE("Faddeev-LeVerrier matches cofactor expansion") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int size = 2 + static_cast<int>(rng.below(3));
        PolyMatrix h = test::random_poly_matrix(rng, size, size, 2, 2);
        auto fl = char_poly_coeffs(h);
        auto cofactor = test::charpoly_via_cofactor(h);
        REQUIRE(fl.size() == cofactor.size());
        for (std::size_t j = 0; j < fl.size(); ++j) CHECK(fl[j] == cofactor[j]);
    }
}

TEST_CASE("signed characteristic coefficients of M M^T are pointwise non-negative") {
    Rng rng(99);
    PolyMatrix m = test::random_poly_matrix(rng, 3, 2, 2, 2);
    auto coeffs = char_poly_coeffs(m * m.transpose());
    for (int sample = 0; sample < 100; ++sample) {
        auto point = test::random_rational_point(rng, 2);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            Rational value = coeffs[j].eval(std::span<const Rational>(point));
            if (j % 2 == 1) value = -value;
            CHECK(value >= 0);
        }
    }
}

TEST_CASE("minors") {
    PolyMatrix row(1, 2, 2);
    row.at(0, 0) = xi(2, 0);
    row.at(0, 1) = xi(2, 1);
    auto order1 = row.minors(1);
    REQUIRE(order1.size() == 2);
    CHECK(order1[0] == xi(2, 0));
    CHECK(order1[1] == xi(2, 1));

    PolyMatrix curl_like(2, 2, 2);
    curl_like.at(0, 0) = -xi(2, 1, 2);
    curl_like.at(0, 1) = xi(2, 0) * xi(2, 1);
    curl_like.at(1, 0) = xi(2, 0) * xi(2, 1);
    curl_like.at(1, 1) = -xi(2, 0, 2);
    auto order2 = curl_like.minors(2);
    REQUIRE(order2.size() == 1);
    CHECK(order2[0].is_zero());

    auto id_minor = PolyMatrix::identity(2, 2).minors(2);
    CHECK(id_minor[0] == Poly::constant(2, Rational(1)));

    CHECK_THROWS_AS(row.minors(2), DimensionMismatch);
}

TEST_CASE("exact rational evaluation") {
    PolyMatrix row(1, 2, 2);
    row.at(0, 0) = xi(2, 0);
    row.at(0, 1) = xi(2, 1);
    std::vector<Rational> point{Rational(3), Rational(4)};
    RatMatrix value = row.eval(point);
    CHECK(value.at(0, 0) == 3);
    CHECK(value.at(0, 1) == 4);

    PolyMatrix curl_like(2, 2, 2);
    curl_like.at(0, 0) = -xi(2, 1, 2);
    curl_like.at(0, 1) = xi(2, 0) * xi(2, 1);
    curl_like.at(1, 0) = xi(2, 0) * xi(2, 1);
    curl_like.at(1, 1) = -xi(2, 0, 2);
    std::vector<Rational> e1{Rational(1), Rational(0)};
    RatMatrix at_e1 = curl_like.eval(e1);
    CHECK(at_e1.at(0, 0) == 0);
    CHECK(at_e1.at(0, 1) == 0);
    CHECK(at_e1.at(1, 0) == 0);
    CHECK(at_e1.at(1, 1) == -1);

    // positive-degree entries vanish at the origin
    std::vector<Rational> origin{Rational(0), Rational(0)};
    CHECK(curl_like.eval(origin).is_zero());
}

TEST_CASE("content normalization") {
    PolyMatrix m(1, 2, 2);
    m.at(0, 0) = xi(2, 0).scaled(Rational(2));
    m.at(0, 1) = xi(2, 1).scaled(Rational(4));
    auto [normalized, content] = m.content_normalized();
    CHECK(content == Rational(2));
    CHECK(normalized.at(0, 0) == xi(2, 0));
    CHECK(normalized.at(0, 1) == xi(2, 1).scaled(Rational(2)));

    PolyMatrix frac(1, 2, 2);
    frac.at(0, 0) = xi(2, 0).scaled(Rational(1, 2));
    frac.at(0, 1) = xi(2, 1).scaled(Rational(1, 3));
    auto [norm2, content2] = frac.content_normalized();
    CHECK(content2 == Rational(1, 6));
    CHECK(norm2.at(0, 0) == xi(2, 0).scaled(Rational(3)));
    CHECK(norm2.at(0, 1) == xi(2, 1).scaled(Rational(2)));

    PolyMatrix zero(2, 2, 2);
    auto [norm3, content3] = zero.content_normalized();
    CHECK(norm3.is_zero());
    CHECK(content3 == Rational(1));
}

TEST_CASE("ring axioms on random polynomials") {
    Rng rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        Poly a = test::random_poly(rng, 2, 3, 4);
        Poly b = test::random_poly(rng, 2, 3, 4);
        Poly c = test::random_poly(rng, 2, 3, 4);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    Rng rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        Poly p = test::random_poly(rng, 3, 3, 4);
        Poly q = test::random_poly(rng, 3, 3, 4);
        auto point = test::random_rational_point(rng, 3);
        std::span<const Rational> view(point);
        CHECK((p * q).eval(view) == p.eval(view) * q.eval(view));
        CHECK((p + q).eval(view) == p.eval(view) + q.eval(view));
    }
}

TEST_CASE("graded-lex term order is canonical") {
    Poly p = xi(2, 0, 2) + xi(2, 1) + Poly::constant(2, Rational(5));
    std::vector<int> degrees;
    for (const auto& [alpha, c] : p.terms()) degrees.push_back(alpha.degree());
    CHECK(degrees == std::vector<int>{0, 1, 2});
    CHECK(p.to_string() == "5 + xi2 + xi1^2");
}

TEST_CASE("exact rank by fraction-free elimination") {
    RatMatrix m(3, 3);
    m.at(0, 0) = Rational(1, 2);
    m.at(0, 1) = Rational(1, 3);
    m.at(1, 0) = Rational(1);
    m.at(1, 1) = Rational(2, 3);
    m.at(2, 2) = Rational(7);
    CHECK(m.rank() == 2);  // row 1 = 2 * row 0
    CHECK(RatMatrix::identity(4).rank() == 4);
    CHECK(RatMatrix(3, 2).rank() == 0);
}

}  // TEST_SUITE
