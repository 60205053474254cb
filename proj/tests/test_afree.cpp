#include <doctest.h>

#include <cmath>

#include "potkit/afree.hpp"
#include "potkit/builtins.hpp"
#include "potkit/errors.hpp"
#include "potkit/synthesis.hpp"

using namespace potkit;

namespace {

constexpr double kTwoPi = 6.283185307179586;

GridField oscillation(int m, int j) {
    GridField w(2, 2, m);
    const Lattice lat = w.lattice();
    std::vector<double> x(2);
    for (std::size_t p = 0; p < w.points(); ++p) {
        grid_point(lat, p, x);
        w.at(p, 1) = std::sin(kTwoPi * j * x[0]);
    }
    return w;
}

}  // namespace

TEST_SUITE("afree") {

TEST_CASE("radial truncation") {
    GridField w(1, 2, 4);
    w.at(0, 0) = 3.0;
    w.at(0, 1) = 4.0;
    w.at(1, 0) = 0.5;
    GridField t = truncate(w, 2.0);
    CHECK(t.at(0, 0) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(t.at(0, 1) == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(t.at(1, 0) == 0.5);  // below the level: untouched

    GridField same = truncate(w, 10.0);
    CHECK(same.data() == w.data());
    GridField zero(1, 2, 4);
    CHECK(truncate(zero, 1.0).data() == zero.data());
}

TEST_CASE("truncation never increases the pointwise norm and converges up the ladder") {
    GridField w = oscillation(32, 2);
    w.at(3, 0) = 5.0;
    double previous_gap = 1e300;
    for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        GridField t = truncate(w, alpha);
        double gap = 0.0;
        for (std::size_t p = 0; p < w.points(); ++p) {
            CHECK(t.fiber_norm(p) <= w.fiber_norm(p) + 1e-15);
            CHECK(t.fiber_norm(p) <= alpha + 1e-12);
            double d = 0.0;
            for (int c = 0; c < 2; ++c) d += (t.at(p, c) - w.at(p, c)) * (t.at(p, c) - w.at(p, c));
            gap += d;
        }
        CHECK(gap <= previous_gap + 1e-15);
        previous_gap = gap;
    }
    CHECK(previous_gap == 0.0);  // ladder above the sup norm leaves w untouched
}

TEST_CASE("cutoff scale rule") {
    CHECK(cutoff_scale(std::vector<double>{0.01}) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(cutoff_scale(std::vector<double>{0.04, 1e-8}) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(cutoff_scale(std::vector<double>{0.0, 0.0}) == 1.0 / 64.0);   // configured floor
    CHECK(cutoff_scale(std::vector<double>{25.0}) == 0.25);             // clamped
    CHECK_THROWS(cutoff_scale(std::vector<double>{-1.0}));
}

TEST_CASE("cutoff profile: exact plateau, exact dead zone, derivative constant") {
    CutoffProfile profile = CutoffProfile::make(0.25, 3);
    CHECK(profile.value1d(0.0) == 0.0);
    CHECK(profile.value1d(0.1) == 0.0);    // below margin/2
    CHECK(profile.value1d(0.125) == 0.0);  // boundary of the dead zone
    CHECK(profile.value1d(0.3) == 1.0);
    CHECK(profile.value1d(0.5) == 1.0);
    CHECK(profile.value1d(0.95) == 0.0);
    CHECK(profile.value1d(0.1875) == doctest::Approx(0.5).epsilon(1e-12));  // midpoint of the ramp

    // |d^j rho| <= C margin^{-j} with the recorded constant, scanned densely
    for (int j = 0; j <= 3; ++j) {
        double sup = 0.0;
        for (int s = 0; s <= 20000; ++s)
            sup = std::max(sup, std::abs(profile.deriv1d(s / 20000.0, j)));
        CHECK(sup <= profile.deriv_constant() * std::pow(0.25, -j) * (1.0 + 1e-12));
    }

    // C^order smoothness: derivative continuity at the splice points
    for (int j = 1; j <= 3; ++j) {
        CHECK(std::abs(profile.deriv1d(0.125 + 1e-9, j)) < 1e-3 * std::pow(8.0, j + 1));
        CHECK(std::abs(profile.deriv1d(0.25 - 1e-9, j)) < 1e-3 * std::pow(8.0, j + 1));
    }
    CHECK_THROWS(CutoffProfile::make(0.5, 2));
    CHECK_THROWS(CutoffProfile::make(0.0, 2));
}

TEST_CASE("smooth cutoff: plateau identity, boundary band exactly zero") {
    GridField ones(2, 1, 32);
    for (auto& v : ones.data()) v = 1.0;
    CutoffProfile profile = CutoffProfile::make(0.25, 2);
    GridField cut = smooth_cutoff(ones, profile);
    const Lattice lat = cut.lattice();
    std::vector<double> x(2);
    for (std::size_t p = 0; p < cut.points(); ++p) {
        grid_point(lat, p, x);
        const double dist = std::min({x[0], 1.0 - x[0], x[1], 1.0 - x[1]});
        if (dist <= 0.125) CHECK(cut.at(p, 0) == 0.0);
        if (dist >= 0.25) CHECK(cut.at(p, 0) == 1.0);
    }
}

TEST_CASE("shrinking margins converge to the identity") {
    GridField w = oscillation(64, 1);
    double previous = 1e300;
    for (double margin : {0.25, 0.125, 0.0625, 0.03125}) {
        GridField cut = smooth_cutoff(w, CutoffProfile::make(margin, 2));
        double gap = 0.0;
        for (std::size_t i = 0; i < w.data().size(); ++i)
            gap += (cut.data()[i] - w.data()[i]) * (cut.data()[i] - w.data()[i]);
        CHECK(gap < previous);
        previous = gap;
    }
}

TEST_CASE("mollification preserves constants and means") {
    GridField c(2, 1, 32);
    for (auto& v : c.data()) v = 2.5;
    GridField mc = mollify(c, 3.0 / 32.0);
    for (double v : mc.data()) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));

    GridField spike(2, 1, 32);
    spike.at(5 * 32 + 7, 0) = 1.0;
    GridField ms = mollify(spike, 4.0 / 32.0);
    CHECK(ms.mean()[0] == doctest::Approx(spike.mean()[0]).epsilon(1e-12));
    // spread over the support radius, non-negative kernel
    int touched = 0;
    for (double v : ms.data()) {
        CHECK(v >= 0.0);
        if (v > 0.0) ++touched;
    }
    CHECK(touched > 20);
    CHECK_THROWS_AS(mollify(spike, 1.0 / 32.0), ResolutionError);
}

TEST_CASE("spectral derivative norms match hand values") {
    GridField w = oscillation(32, 1);  // (0, sin(2 pi x1))
    TorusField f = dft_forward(w);
    CHECK(derivative_l2_norm(f, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(derivative_l2_norm(f, 1) == doctest::Approx(kTwoPi * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("pipeline parameter parsing") {
    std::vector<std::string> entries{"alpha_scale=2.5", "mollify_cells=3",
                                     "alpha_ladder=1,2,4", "seed=9"};
    PipelineParams params = parse_pipeline_params(entries);
    CHECK(params.alpha_scale == 2.5);
    CHECK(params.mollify_cells == 3.0);
    CHECK(params.alpha_ladder == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(params.seed == 9);
    CHECK_THROWS_AS(parse_pipeline_params(std::vector<std::string>{"nope=1"}), ParseError);
    CHECK_THROWS_AS(parse_pipeline_params(std::vector<std::string>{"alpha_scale"}), ParseError);
}

TEST_CASE("compactify: zero input gives zero output") {
    DiffOp a = builtin("div", 2);
    DiffOp b = potential_of(a);
    std::vector<GridField> fields{GridField(2, 2, 32)};
    PipelineResult result = compactify_sequence(a, b, fields);
    CHECK(result.elements[0].potential.l2_norm() == 0.0);
    CHECK(result.elements[0].field.l2_norm() == 0.0);
}

TEST_CASE("compactify rejects non-exact pairs") {
    std::vector<GridField> fields{GridField(2, 2, 32)};
    CHECK_THROWS_AS(
        compactify_sequence(builtin("div", 2), builtin("grad_scalar", 2), fields),
        NotConstantRank);
}

TEST_CASE("compactify: oscillation family at desk scale") {
    DiffOp a = builtin("div", 2);
    DiffOp b = potential_of(a);
    std::vector<GridField> fields;
    for (int j : {1, 2}) fields.push_back(oscillation(64, j));
    PipelineResult result = compactify_sequence(a, b, fields);
    REQUIRE(result.elements.size() == 2);

    for (const auto& elem : result.elements) {
        // compact support is exact: the margin/2 band is identically zero
        const Lattice lat = elem.potential.lattice();
        std::vector<double> x(2);
        for (std::size_t p = 0; p < elem.potential.points(); ++p) {
            grid_point(lat, p, x);
            const double dist = std::min({x[0], 1.0 - x[0], x[1], 1.0 - x[1]});
            if (dist <= elem.margin / 2.0) {
                for (int c = 0; c < 2; ++c) {
                    CHECK(elem.potential.at(p, c) == 0.0);
                    CHECK(elem.field.at(p, c) == 0.0);
                }
            }
        }
        CHECK(elem.residual_inner <= 1e-8 * std::max(1.0, elem.field.l2_norm()));
        for (double diff : elem.moment_diffs) CHECK(diff <= 8e-2);  // coarse 64^2 run
    }
}

TEST_CASE("compactify in three dimensions") {
    DiffOp a = builtin("div", 3);
    DiffOp b = potential_of(a);
    GridField w(3, 3, 32);
    const Lattice lat = w.lattice();
    std::vector<double> x(3);
    for (std::size_t p = 0; p < w.points(); ++p) {
        grid_point(lat, p, x);
        w.at(p, 2) = std::sin(kTwoPi * x[0]);  // divergence-free
    }
    std::vector<GridField> fields{w};
    PipelineParams params;
    params.verify_samples = 10;
    PipelineResult result = compactify_sequence(a, b, fields, params);
    const auto& elem = result.elements[0];

    std::vector<double> y(3);
    for (std::size_t p = 0; p < elem.potential.points(); ++p) {
        grid_point(lat, p, y);
        const double dist = std::min({y[0], 1.0 - y[0], y[1], 1.0 - y[1], y[2], 1.0 - y[2]});
        if (dist <= elem.margin / 2.0)
            for (int c = 0; c < 3; ++c) {
                CHECK(elem.potential.at(p, c) == 0.0);
                CHECK(elem.field.at(p, c) == 0.0);
            }
    }
    CHECK(elem.residual_inner <= 1e-8 * std::max(1.0, elem.field.l2_norm()));
    // coarse grid, coarse bound: the statistics survive the pipeline
    for (double diff : elem.moment_diffs) CHECK(diff <= 0.15);
}

TEST_CASE("moment diagnostics of the oscillation family") {
    std::vector<GridField> fields;
    for (int j : {1, 2, 4}) fields.push_back(oscillation(64, j));
    std::vector<Integrand> phis{Integrand::component(2, 0), Integrand::component(2, 1),
                                parse_integrand("w2^2", 2)};
    DiffOp div2 = builtin("div", 2);
    SequenceDiagnostics diag = ym_moments(fields, phis, &div2);
    REQUIRE(diag.elements.size() == 3);
    for (const auto& elem : diag.elements) {
        CHECK(std::abs(elem.moments[0]) < 1e-12);                         // weak limit 0
        CHECK(std::abs(elem.moments[1]) < 1e-12);                         // integer modes: exact 0
        CHECK(elem.moments[2] == doctest::Approx(0.5).epsilon(1e-6));     // sin^2 mean
        CHECK(elem.neg_sobolev_residual < 1e-12);                         // family is div-free
        CHECK(elem.lp_norm == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
    // tail mass ladder is non-increasing and vanishes above the sup norm
    for (std::size_t k = 1; k < diag.tail_mass.size(); ++k)
        CHECK(diag.tail_mass[k] <= diag.tail_mass[k - 1] + 1e-15);
    CHECK(diag.tail_mass.back() == 0.0);
}

TEST_CASE("constant fields report their own moments") {
    GridField c(2, 2, 16);
    for (std::size_t p = 0; p < c.points(); ++p) {
        c.at(p, 0) = 1.5;
        c.at(p, 1) = -2.0;
    }
    std::vector<GridField> fields{c};
    std::vector<Integrand> phis{parse_integrand("w1^2 + w2^2", 2)};
    SequenceDiagnostics diag = ym_moments(fields, phis);
    CHECK(diag.elements[0].moments[0] == doctest::Approx(1.5 * 1.5 + 4.0).epsilon(1e-14));
}

TEST_CASE("moment_on_box restricts correctly") {
    GridField w(1, 1, 8);
    for (std::size_t p = 0; p < 8; ++p) w.at(p, 0) = static_cast<double>(p);
    // box [0.25, 0.5]: grid points 2, 3, 4
    CHECK(moment_on_box(w, Integrand::component(1, 0), 0.25, 0.5) ==
          doctest::Approx(3.0).epsilon(1e-15));
}

}  // TEST_SUITE
