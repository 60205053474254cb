#include "potkit/test_potential.hpp"

#include <cmath>

#include "potkit/errors.hpp"
#include "potkit/rng.hpp"

namespace potkit {

namespace {

// Odometer over the signed mode band [-M, M]^n; a mode is canonical when it is
// lexicographically >= its negation (zero included).
bool next_mode(std::vector<int>& mode, int max_mode) {
    int axis = static_cast<int>(mode.size()) - 1;
    while (axis >= 0 && mode[static_cast<std::size_t>(axis)] == max_mode) {
        mode[static_cast<std::size_t>(axis)] = -max_mode;
        --axis;
    }
    if (axis < 0) return false;
    ++mode[static_cast<std::size_t>(axis)];
    return true;
}

bool is_canonical(const std::vector<int>& mode) {
    for (int v : mode) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return true;  // zero mode
}

bool is_self_conjugate(const std::vector<int>& mode) {
    for (int v : mode)
        if (v != 0) return false;
    return true;
}

template <typename Visit>
void for_each_canonical_mode(int n, int max_mode, Visit&& visit) {
    std::vector<int> mode(static_cast<std::size_t>(n), -max_mode);
    while (true) {
        if (is_canonical(mode)) visit(mode);
        if (!next_mode(mode, max_mode)) break;
    }
}

}  // namespace

std::size_t coeff_count(int n, int fiber, int max_mode) {
    std::size_t count = 0;
    for_each_canonical_mode(n, max_mode, [&](const std::vector<int>&) { ++count; });
    return 2 * count * static_cast<std::size_t>(fiber);
}

TestPotential gen_test_potential(int n, int fiber, int max_mode, double amplitude,
                                 std::uint64_t seed, int base_grid, double cutoff_margin,
                                 int cutoff_order, int op_order) {
    if (base_grid < 4 * (2 * max_mode + 1))
        throw ResolutionError("test potential: need >= 4x oversampling of the mode band");
    TestPotential tp;
    tp.n = n;
    tp.fiber = fiber;
    tp.max_mode = max_mode;
    tp.base_grid = base_grid;
    tp.op_order = op_order;
    tp.amplitude = amplitude;
    tp.seed = seed;
    tp.cutoff_margin = cutoff_margin;
    tp.cutoff_order = cutoff_order;
    tp.coeffs.resize(coeff_count(n, fiber, max_mode));
    Rng rng(seed);
    for (auto& c : tp.coeffs) c = rng.gaussian();
    return tp;
}

TestPotential rescale_potential(const TestPotential& u, int factor, int op_order) {
    if (factor < 1) throw std::invalid_argument("rescale_potential: factor must be >= 1");
    TestPotential out = u;
    out.tiling *= factor;
    out.op_order = op_order;
    return out;
}

TorusField potential_spectrum(const TestPotential& tp) {
    TorusField spectrum(tp.n, tp.fiber, tp.base_grid, true);
    const Lattice lat = spectrum.lattice();
    const double scale =
        tp.amplitude / std::sqrt(static_cast<double>(tp.coeffs.size() / 2));
    std::size_t cursor = 0;
    std::vector<int> mirror(static_cast<std::size_t>(tp.n));
    for_each_canonical_mode(tp.n, tp.max_mode, [&](const std::vector<int>& mode) {
        for (int c = 0; c < tp.fiber; ++c) {
            const double re = tp.coeffs[cursor++];
            const double im = tp.coeffs[cursor++];
            const std::size_t p = lat.flatten(mode);
            if (is_self_conjugate(mode)) {
                spectrum.at(p, c) = {re * scale, 0.0};
            } else {
                for (std::size_t i = 0; i < mode.size(); ++i) mirror[i] = -mode[i];
                const std::size_t q = lat.flatten(mirror);
                spectrum.at(p, c) = {re * scale, im * scale};
                spectrum.at(q, c) = {re * scale, -im * scale};
            }
        }
    });
    return spectrum;
}

RealizedPotential realize_potential(const TestPotential& tp, const DiffOp& b,
                                    std::span<const MultiIndex> extra_derivs) {
    if (b.dim_from != tp.fiber)
        throw DimensionMismatch("realize_potential: potential fiber != dim V of operator");
    const CutoffProfile profile = CutoffProfile::make(tp.cutoff_margin,
                                                      std::max(tp.cutoff_order, b.order));
    const TorusField spectrum = potential_spectrum(tp);
    CutoffFields base = apply_cutoff_and_operator(b, spectrum, profile, extra_derivs);

    RealizedPotential out;
    if (tp.tiling == 1) {
        out.grid = tp.base_grid;
        out.u = std::move(base.u);
        out.bu = std::move(base.bu);
        out.derivs = std::move(base.derivs);
        return out;
    }

    // Value mapping: u_N(j / (N Mb)) = N^{-l} u(j mod Mb / Mb), derivatives pick
    // up N^{|gamma|-l}, and (B u_N)(x) = (B u)(N x) exactly.
    const int fine = tp.base_grid * tp.tiling;
    const Lattice fine_lat{tp.n, fine};
    const Lattice base_lat{tp.n, tp.base_grid};
    out.grid = fine;
    out.u = GridField(tp.n, tp.fiber, fine);
    out.bu = GridField(tp.n, b.dim_to, fine);
    for (const auto& gamma : extra_derivs) out.derivs.emplace(gamma, GridField(tp.n, tp.fiber, fine));

    const double u_scale = std::pow(static_cast<double>(tp.tiling), -tp.op_order);
    std::vector<int> idx(static_cast<std::size_t>(tp.n)), bidx(static_cast<std::size_t>(tp.n));
    const std::size_t np = fine_lat.size();
    for (std::size_t p = 0; p < np; ++p) {
        fine_lat.unflatten(p, idx);
        for (int i = 0; i < tp.n; ++i) bidx[static_cast<std::size_t>(i)] =
            idx[static_cast<std::size_t>(i)] % tp.base_grid;
        const std::size_t q = base_lat.flatten(bidx);
        for (int c = 0; c < tp.fiber; ++c) out.u.at(p, c) = u_scale * base.u.at(q, c);
        for (int c = 0; c < b.dim_to; ++c) out.bu.at(p, c) = base.bu.at(q, c);
        for (auto& [gamma, field] : out.derivs) {
            const double g_scale =
                std::pow(static_cast<double>(tp.tiling), gamma.degree() - tp.op_order);
            for (int c = 0; c < tp.fiber; ++c)
                field.at(p, c) = g_scale * base.derivs.at(gamma).at(q, c);
        }
    }
    return out;
}

}  // namespace potkit
