#include "potkit/envelope.hpp"

#include <cmath>

#include "potkit/errors.hpp"
#include "potkit/rng.hpp"

namespace potkit {

namespace {

double cube_average(const Integrand& f, std::span<const double> eta, const GridField& bu) {
    const std::size_t np = bu.points();
    const int d = bu.d();
    std::vector<double> w(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        for (int c = 0; c < d; ++c) w[static_cast<std::size_t>(c)] = eta[static_cast<std::size_t>(c)] + bu.at(p, c);
        acc += f.eval(w);
    }
    return acc / static_cast<double>(np);
}

struct Search {
    const Integrand& f;
    std::span<const double> eta;
    const DiffOp& b;
    const EnvelopeParams& params;
    long budget;
    Rng rng;

    EnvelopeResult result;
    double f_eta = 0.0;
    double floor = 0.0;
    double amplitude = 0.0;
    std::size_t descent_cursor = 0;

    Search(const Integrand& f_, std::span<const double> eta_, const DiffOp& b_, long budget_,
           std::uint64_t seed, const EnvelopeParams& params_)
        : f(f_), eta(eta_), b(b_), params(params_), budget(budget_), rng(seed) {}

    double improve_tol() const { return params.improve_rel * (std::abs(result.value) + 1.0); }

    // One candidate evaluation; returns false once the budget is exhausted or
    // the divergence floor is crossed.
    bool evaluate(const TestPotential& tp, bool* improved) {
        if (result.evals >= budget) return false;
        const double value = tp.amplitude == 0.0
                                 ? f_eta
                                 : cube_average(f, eta, realize_potential(tp, b).bu);
        ++result.evals;
        if (value < result.value - improve_tol()) {
            result.value = value;
            result.best = tp;
            if (improved) *improved = true;
        }
        result.trace.push_back({result.evals, value, tp.amplitude, result.value});
        if (value < floor) {
            result.diverged = true;
            return false;
        }
        return true;
    }

    void run() {
        f_eta = f.eval(eta);
        floor = -params.floor_scale * (std::abs(f_eta) + 1.0);
        result.value = f_eta;
        result.best = TestPotential{};
        result.best.n = b.n;
        result.best.fiber = b.dim_from;
        result.best.amplitude = 0.0;  // u = 0 candidate, always admissible
        result.trace.push_back({0, f_eta, 0.0, f_eta});
        amplitude = params.amp0;

        while (result.evals < budget && !result.diverged) {
            bool improved = false;
            for (int s = 0; s < params.starts_per_batch; ++s) {
                TestPotential tp = gen_test_potential(b.n, b.dim_from, params.max_mode, amplitude,
                                                      rng.next(), params.base_grid,
                                                      params.cutoff_margin, params.cutoff_order,
                                                      b.order);
                if (!evaluate(tp, &improved)) return;
            }
            if (result.best.amplitude > 0.0) {
                for (int s = 0; s < params.descent_steps; ++s)
                    if (!descend_once()) return;
            }
            if (improved) amplitude *= params.anneal;
        }
    }

    bool descend_once() {
        TestPotential probe = result.best;
        const std::size_t coord = descent_cursor++ % probe.coeffs.size();
        const double step = params.descent_step;
        probe.coeffs[coord] = result.best.coeffs[coord] + step;
        if (!evaluate(probe, nullptr)) return false;
        probe.coeffs[coord] = result.best.coeffs[coord] - step;
        if (!evaluate(probe, nullptr)) return false;
        return true;
    }
};

}  // namespace

EnvelopeResult estimate_envelope(const Integrand& f, std::span<const double> eta, const DiffOp& b,
                                 long budget, std::uint64_t seed, const EnvelopeParams& params) {
    if (f.fiber_dim() != b.dim_to)
        throw DimensionMismatch("estimate_envelope: integrand fiber != dim W of potential");
    if (static_cast<int>(eta.size()) != b.dim_to)
        throw DimensionMismatch("estimate_envelope: eta fiber mismatch");
    Search search(f, eta, b, budget, seed, params);
    search.run();
    return search.result;
}

DomainInvarianceReport check_domain_invariance(const Integrand& f, std::span<const double> eta,
                                               const DiffOp& b, std::span<const double> box_lo,
                                               std::span<const double> box_hi, long budget,
                                               std::uint64_t seed, const EnvelopeParams& params) {
    const int n = b.n;
    if (static_cast<int>(box_lo.size()) != n || static_cast<int>(box_hi.size()) != n)
        throw DimensionMismatch("check_domain_invariance: box dimension mismatch");
    double min_side = 1.0;
    for (int i = 0; i < n; ++i) {
        if (!(box_lo[static_cast<std::size_t>(i)] >= 0.0 &&
              box_hi[static_cast<std::size_t>(i)] <= 1.0 &&
              box_lo[static_cast<std::size_t>(i)] < box_hi[static_cast<std::size_t>(i)]))
            throw std::invalid_argument("check_domain_invariance: box must lie inside (0,1)^n");
        min_side = std::min(min_side,
                            box_hi[static_cast<std::size_t>(i)] - box_lo[static_cast<std::size_t>(i)]);
    }

    DomainInvarianceReport report;
    EnvelopeResult cube = estimate_envelope(f, eta, b, budget, seed, params);
    report.cube_value = cube.value;
    report.diverged = cube.diverged;

    // Largest grid-commensurate cube eps = 1/K inside the box.
    int k_factor = static_cast<int>(std::ceil(1.0 / min_side - 1e-12));
    std::vector<double> origin(static_cast<std::size_t>(n));
    const auto snap_origin = [&](int k) -> bool {
        const double eps = 1.0 / k;
        const int fine = params.base_grid * k;
        for (int i = 0; i < n; ++i) {
            const double snapped =
                std::ceil(box_lo[static_cast<std::size_t>(i)] * fine - 1e-9) / fine;
            if (snapped + eps > box_hi[static_cast<std::size_t>(i)] + 1e-12) return false;
            origin[static_cast<std::size_t>(i)] = snapped;
        }
        return true;
    };
    if (!snap_origin(k_factor)) {
        ++k_factor;
        if (!snap_origin(k_factor))
            throw ResolutionError("check_domain_invariance: no grid-commensurate cube fits the box");
    }
    const double eps = 1.0 / k_factor;
    report.eps = eps;
    report.origin = origin;

    // Embedding identity: the average over the cube of f(eta + B u) with
    // u = eps^l v((x - x0)/eps) equals (1 - eps^n) f(eta) + eps^n avg f(eta + B v).
    const double f_eta = f.eval(eta);
    const double eps_n = std::pow(eps, n);
    report.box_value = (1.0 - eps_n) * f_eta + eps_n * cube.value;

    // Direct fine-grid quadrature of one embedded candidate as a consistency check.
    TestPotential probe = gen_test_potential(b.n, b.dim_from, params.max_mode, params.amp0,
                                             Rng(seed).next(), params.base_grid,
                                             params.cutoff_margin, params.cutoff_order, b.order);
    const GridField bv = realize_potential(probe, b).bu;
    const int fine = params.base_grid * k_factor;
    const Lattice fine_lat{n, fine};
    const Lattice base_lat{n, params.base_grid};
    std::vector<int> idx(static_cast<std::size_t>(n)), bidx(static_cast<std::size_t>(n));
    std::vector<double> w(static_cast<std::size_t>(b.dim_to));
    double direct = 0.0;
    const std::size_t np = fine_lat.size();
    for (std::size_t p = 0; p < np; ++p) {
        fine_lat.unflatten(p, idx);
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) {
            const long shifted = idx[static_cast<std::size_t>(i)] -
                                 std::lround(origin[static_cast<std::size_t>(i)] * fine);
            inside = shifted >= 0 && shifted < params.base_grid;
            if (inside) bidx[static_cast<std::size_t>(i)] = static_cast<int>(shifted);
        }
        if (inside) {
            const std::size_t q = base_lat.flatten(bidx);
            for (int c = 0; c < b.dim_to; ++c)
                w[static_cast<std::size_t>(c)] = eta[static_cast<std::size_t>(c)] + bv.at(q, c);
            direct += f.eval(w);
        } else {
            direct += f_eta;
        }
    }
    direct /= static_cast<double>(np);
    const double via_identity =
        (1.0 - eps_n) * f_eta + eps_n * cube_average(f, eta, bv);
    report.identity_gap = std::abs(direct - via_identity);
    return report;
}

}  // namespace potkit
