#include "potkit/afree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "potkit/errors.hpp"

namespace potkit {

GridField truncate(const GridField& w, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("truncate: alpha must be positive");
    GridField out = w;
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        const double norm = w.fiber_norm(p);
        if (norm > alpha) {
            const double scale = alpha / norm;
            for (int c = 0; c < w.d(); ++c) out.at(p, c) = w.at(p, c) * scale;
        }
    }
    return out;
}

double cutoff_scale(std::span<const double> norm_table, double min_margin) {
    double s = 0.0;
    const int l = static_cast<int>(norm_table.size());
    for (int m = 1; m <= l; ++m) {
        const double norm = norm_table[static_cast<std::size_t>(m - 1)];
        if (norm < 0.0) throw std::invalid_argument("cutoff_scale: negative norm");
        if (norm > 0.0) s = std::max(s, std::pow(norm, 1.0 / (2.0 * m)));
    }
    return std::clamp(s, min_margin, 0.25);
}

GridField smooth_cutoff(const GridField& w, const CutoffProfile& profile) {
    GridField out(w.n(), w.d(), w.m());
    const Lattice lat = w.lattice();
    std::vector<double> x(static_cast<std::size_t>(w.n()));
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        grid_point(lat, p, x);
        const double rho = profile.value(x);
        if (rho == 0.0) continue;
        for (int c = 0; c < w.d(); ++c) out.at(p, c) = w.at(p, c) * rho;
    }
    return out;
}

GridField mollify(const GridField& w, double eps) {
    const double h = w.spacing();
    if (eps < 2.0 * h - 1e-12)
        throw ResolutionError("mollify: support radius below two grid spacings");
    const int reach = static_cast<int>(std::floor(eps / h));

    // Radial polynomial bump (1 - (r/eps)^2)^3, discretely normalized to unit mass.
    std::vector<std::vector<int>> offs;
    std::vector<double> weights;
    std::vector<int> cur(static_cast<std::size_t>(w.n()), -reach);
    while (true) {
        double r2 = 0.0;
        for (int v : cur) r2 += static_cast<double>(v) * v;
        const double rho = std::sqrt(r2) * h / eps;
        if (rho < 1.0) {
            const double t = 1.0 - rho * rho;
            offs.push_back(cur);
            weights.push_back(t * t * t);
        }
        int axis = w.n() - 1;
        while (axis >= 0 && cur[static_cast<std::size_t>(axis)] == reach) {
            cur[static_cast<std::size_t>(axis)] = -reach;
            --axis;
        }
        if (axis < 0) break;
        ++cur[static_cast<std::size_t>(axis)];
    }
    double total = 0.0;
    for (double v : weights) total += v;
    for (double& v : weights) v /= total;

    const Lattice lat = w.lattice();
    GridField out(w.n(), w.d(), w.m());
    std::vector<int> idx(static_cast<std::size_t>(w.n())), shifted(static_cast<std::size_t>(w.n()));
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        for (std::size_t k = 0; k < offs.size(); ++k) {
            for (int i = 0; i < w.n(); ++i)
                shifted[static_cast<std::size_t>(i)] =
                    idx[static_cast<std::size_t>(i)] + offs[k][static_cast<std::size_t>(i)];
            const std::size_t q = lat.flatten(shifted);
            for (int c = 0; c < w.d(); ++c) out.at(p, c) += weights[k] * w.at(q, c);
        }
    }
    return out;
}

double derivative_l2_norm(const TorusField& u_hat, int j) {
    const Lattice lat = u_hat.lattice();
    std::vector<int> idx(static_cast<std::size_t>(u_hat.n()));
    double acc = 0.0;
    const std::size_t np = u_hat.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        double xi2 = 0.0;
        for (int v : idx) {
            const double s = lat.signed_freq(v);
            xi2 += s * s;
        }
        const double weight = std::pow(4.0 * M_PI * M_PI * xi2, j);
        for (int c = 0; c < u_hat.d(); ++c) acc += std::norm(u_hat.at(p, c)) * weight;
    }
    return std::sqrt(acc);
}

namespace {

void enumerate_sub_indices(const MultiIndex& alpha, std::vector<MultiIndex>& out) {
    MultiIndex beta(alpha.size());
    while (true) {
        out.push_back(beta);
        int axis = alpha.size() - 1;
        while (axis >= 0 && beta[axis] == alpha[axis]) {
            beta[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
        ++beta[axis];
    }
}

double multi_binom(const MultiIndex& alpha, const MultiIndex& beta) {
    double r = 1.0;
    for (int i = 0; i < alpha.size(); ++i) {
        int n = alpha[i], k = beta[i];
        double b = 1.0;
        for (int t = 1; t <= k; ++t) b = b * (n - k + t) / t;
        r *= b;
    }
    return r;
}

std::vector<double> matrix_to_double(const RatMatrix& m) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i * m.cols() + j)] = m.at(i, j).get_d();
    return out;
}

// d^gamma of the trig interpolant: multiply by prod (2 pi i xi_k)^{gamma_k}.
GridField spectral_derivative(const TorusField& u_hat, const MultiIndex& gamma) {
    TorusField scaled = u_hat;
    const Lattice lat = u_hat.lattice();
    std::vector<int> idx(static_cast<std::size_t>(u_hat.n()));
    const std::size_t np = u_hat.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        std::complex<double> mult{1.0, 0.0};
        for (int i = 0; i < u_hat.n(); ++i)
            for (int e = 0; e < gamma[i]; ++e)
                mult *= std::complex<double>(0.0, 2.0 * M_PI * lat.signed_freq(idx[static_cast<std::size_t>(i)]));
        for (int c = 0; c < u_hat.d(); ++c) scaled.at(p, c) *= mult;
    }
    return dft_inverse(scaled);
}

}  // namespace

CutoffFields apply_cutoff_and_operator(const DiffOp& b, const TorusField& u_hat,
                                       const CutoffProfile& profile,
                                       std::span<const MultiIndex> extra_derivs) {
    if (b.dim_from != u_hat.d())
        throw DimensionMismatch("apply_cutoff_and_operator: fiber dimension mismatch");
    if (profile.order() < b.order)
        throw std::invalid_argument("cutoff profile smoothness below operator order");

    // Collect the spectral derivatives the Leibniz expansions will touch.
    std::set<MultiIndex, GrlexLess> needed;
    std::vector<MultiIndex> subs;
    for (const auto& [alpha, coeff] : b.coeffs) {
        subs.clear();
        enumerate_sub_indices(alpha, subs);
        needed.insert(subs.begin(), subs.end());
    }
    for (const auto& gamma : extra_derivs) {
        subs.clear();
        enumerate_sub_indices(gamma, subs);
        needed.insert(subs.begin(), subs.end());
    }
    needed.insert(MultiIndex(u_hat.n()));

    std::map<MultiIndex, GridField, GrlexLess> u_derivs;
    for (const auto& gamma : needed) u_derivs.emplace(gamma, spectral_derivative(u_hat, gamma));

    const int n = u_hat.n(), dv = u_hat.d(), m = u_hat.m();
    CutoffFields out;
    out.u = GridField(n, dv, m);
    out.bu = GridField(n, b.dim_to, m);
    for (const auto& gamma : extra_derivs)
        out.derivs.emplace(gamma, GridField(n, dv, m));

    std::vector<std::pair<MultiIndex, std::vector<double>>> op_terms;
    for (const auto& [alpha, coeff] : b.coeffs) op_terms.emplace_back(alpha, matrix_to_double(coeff));

    const Lattice lat{n, m};
    std::vector<double> x(static_cast<std::size_t>(n));
    const std::size_t np = lat.size();
    for (std::size_t p = 0; p < np; ++p) {
        grid_point(lat, p, x);
        if (profile.in_dead_zone(x)) continue;  // exact zeros, including all derivatives

        const double rho = profile.value(x);
        const GridField& u0 = u_derivs.at(MultiIndex(n));
        for (int c = 0; c < dv; ++c) out.u.at(p, c) = rho * u0.at(p, c);

        for (const auto& [alpha, coeff] : op_terms) {
            subs.clear();
            enumerate_sub_indices(alpha, subs);
            for (const auto& beta : subs) {
                const double rho_beta = profile.deriv(x, beta);
                if (rho_beta == 0.0) continue;
                MultiIndex rest(n);
                for (int i = 0; i < n; ++i) rest[i] = alpha[i] - beta[i];
                const GridField& du = u_derivs.at(rest);
                const double weight = multi_binom(alpha, beta) * rho_beta;
                for (int i = 0; i < b.dim_to; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < dv; ++j)
                        acc += coeff[static_cast<std::size_t>(i * dv + j)] * du.at(p, j);
                    out.bu.at(p, i) += weight * acc;
                }
            }
        }

        for (auto& [gamma, field] : out.derivs) {
            subs.clear();
            enumerate_sub_indices(gamma, subs);
            for (const auto& beta : subs) {
                const double rho_beta = profile.deriv(x, beta);
                if (rho_beta == 0.0) continue;
                MultiIndex rest(n);
                for (int i = 0; i < n; ++i) rest[i] = gamma[i] - beta[i];
                const GridField& du = u_derivs.at(rest);
                const double weight = multi_binom(gamma, beta) * rho_beta;
                for (int c = 0; c < dv; ++c) field.at(p, c) += weight * du.at(p, c);
            }
        }
    }
    return out;
}

PipelineParams parse_pipeline_params(std::span<const std::string> entries) {
    PipelineParams params;
    for (const auto& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ParseError("pipeline parameter must be key=value: " + entry, 0);
        const std::string key = entry.substr(0, eq);
        const std::string value = entry.substr(eq + 1);
        try {
            if (key == "alpha_scale") params.alpha_scale = std::stod(value);
            else if (key == "alpha_growth") params.alpha_growth = std::stod(value);
            else if (key == "alpha_ladder") {
                params.alpha_ladder.clear();
                std::size_t start = 0;
                while (start < value.size()) {
                    auto comma = value.find(',', start);
                    if (comma == std::string::npos) comma = value.size();
                    params.alpha_ladder.push_back(std::stod(value.substr(start, comma - start)));
                    start = comma + 1;
                }
            } else if (key == "step1_margin_cells") params.step1_margin_cells = std::stod(value);
            else if (key == "mollify_cells") params.mollify_cells = std::stod(value);
            else if (key == "profile_order") params.profile_order = std::stoi(value);
            else if (key == "min_margin") params.min_margin = std::stod(value);
            else if (key == "verify_samples") params.verify_samples = std::stol(value);
            else if (key == "seed") params.seed = std::stoull(value);
            else throw ParseError("unknown pipeline parameter: " + key, 0);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad pipeline parameter value: " + entry, 0);
        }
    }
    return params;
}

PipelineResult compactify_sequence(const DiffOp& a, const DiffOp& b,
                                   std::span<const GridField> fields,
                                   const PipelineParams& params) {
    const VerifyOutcome pair = verify_exact_pair(a, b, params.verify_samples, params.seed);
    if (!pair.ok())
        throw NotConstantRank("compactify_sequence: (A, B) is not a verified exact pair");

    PipelineResult result;
    const int dw = a.dim_from;
    for (int c = 0; c < dw; ++c) result.moment_set.push_back(Integrand::component(dw, c));
    for (int c1 = 0; c1 < dw; ++c1)
        for (int c2 = c1; c2 < dw; ++c2)
            result.moment_set.push_back(Integrand::pair_product(dw, c1, c2));

    double max_norm = 0.0;
    for (const auto& w : fields) max_norm = std::max(max_norm, w.l2_norm());
    if (max_norm == 0.0) max_norm = 1.0;

    const AfreeProjector projector(a);
    const int profile_order =
        params.profile_order > 0 ? params.profile_order : std::max(a.order, b.order) + 1;

    for (std::size_t j = 0; j < fields.size(); ++j) {
        const GridField& w = fields[j];
        if (w.d() != dw) throw DimensionMismatch("compactify_sequence: field fiber != dim W");
        const double h = w.spacing();
        PipelineElement elem;

        // Step I: truncation ladder, boundary cutoff, mollification.
        elem.alpha = j < params.alpha_ladder.size()
                         ? params.alpha_ladder[j]
                         : params.alpha_scale * max_norm *
                               std::pow(params.alpha_growth, static_cast<double>(j));
        GridField stage = truncate(w, elem.alpha);
        elem.step1_margin =
            std::max(params.step1_margin_cells * h / static_cast<double>(j + 1), 4.0 * h);
        stage = smooth_cutoff(stage, CutoffProfile::make(elem.step1_margin, profile_order));
        elem.mollify_eps = params.mollify_cells * h;
        stage = mollify(stage, elem.mollify_eps);

        // Step II: A-free projection.
        TorusField projected = projector.project(dft_forward(stage));

        // Step III: potential recovery, s_j cutoff, exact differentiation.
        RecoverOptions recover_opts;
        recover_opts.subtract_mean = true;
        TorusField u_hat = recover_potential(b, projected, recover_opts);
        for (int m = 1; m <= b.order; ++m)
            elem.norm_table.push_back(derivative_l2_norm(u_hat, b.order - m));
        elem.margin = cutoff_scale(elem.norm_table, params.min_margin);

        const CutoffProfile final_profile =
            CutoffProfile::make(elem.margin, std::max(profile_order, b.order));
        CutoffFields cut = apply_cutoff_and_operator(b, u_hat, final_profile);
        elem.potential = std::move(cut.u);
        elem.field = std::move(cut.bu);

        // Exactness residual A(Bu) of the band-limited potential; by locality
        // this is the residual of the output on the inner box.
        elem.residual_inner = apply_diffop(a, apply_diffop(b, u_hat)).l2_norm();

        const double lo = elem.margin, hi = 1.0 - elem.margin;
        for (const auto& phi : result.moment_set)
            elem.moment_diffs.push_back(std::abs(moment_on_box(elem.field, phi, lo, hi) -
                                                 moment_on_box(w, phi, lo, hi)));
        result.elements.push_back(std::move(elem));
    }
    return result;
}

SequenceDiagnostics ym_moments(std::span<const GridField> fields,
                               std::span<const Integrand> integrands, const DiffOp* op,
                               std::span<const double> alpha_ladder) {
    SequenceDiagnostics diag;
    double max_linf = 0.0;
    for (const auto& w : fields) max_linf = std::max(max_linf, w.linf_norm());
    if (!alpha_ladder.empty()) {
        diag.alpha_ladder.assign(alpha_ladder.begin(), alpha_ladder.end());
    } else {
        double rung = max_linf > 0.0 ? 0.25 * max_linf : 0.25;
        for (int i = 0; i < 8; ++i) {
            diag.alpha_ladder.push_back(rung);
            rung *= 2.0;
        }
    }
    diag.tail_mass.assign(diag.alpha_ladder.size(), 0.0);

    for (const auto& w : fields) {
        ElementDiagnostics elem;
        elem.lp_norm = w.l2_norm();
        if (op) elem.neg_sobolev_residual = sobolev_norm(apply_diffop(*op, dft_forward(w)), -op->order);
        const std::size_t np = w.points();
        for (const auto& phi : integrands) {
            double acc = 0.0;
            for (std::size_t p = 0; p < np; ++p) acc += phi.eval(w.fiber(p));
            elem.moments.push_back(acc / static_cast<double>(np));
        }
        for (std::size_t k = 0; k < diag.alpha_ladder.size(); ++k) {
            double tail = 0.0;
            for (std::size_t p = 0; p < np; ++p) {
                const double norm = w.fiber_norm(p);
                if (norm > diag.alpha_ladder[k]) tail += norm * norm;
            }
            diag.tail_mass[k] = std::max(diag.tail_mass[k], tail / static_cast<double>(np));
        }
        diag.elements.push_back(std::move(elem));
    }
    return diag;
}

double moment_on_box(const GridField& w, const Integrand& phi, double lo, double hi) {
    const Lattice lat = w.lattice();
    std::vector<double> x(static_cast<std::size_t>(w.n()));
    double acc = 0.0;
    std::size_t count = 0;
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        grid_point(lat, p, x);
        bool inside = true;
        for (double c : x) inside = inside && c >= lo && c <= hi;
        if (!inside) continue;
        acc += phi.eval(w.fiber(p));
        ++count;
    }
    return count ? acc / static_cast<double>(count) : 0.0;
}

}  // namespace potkit
