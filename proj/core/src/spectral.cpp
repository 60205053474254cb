#include "potkit/spectral.hpp"

#include <cmath>

#include "potkit/errors.hpp"
#include "potkit/rng.hpp"

namespace potkit {

namespace {

// (2 pi i)^k = (2 pi)^k * i^k
std::complex<double> two_pi_i_pow(int k) {
    const double mag = std::pow(2.0 * M_PI, k);
    switch (((k % 4) + 4) % 4) {
        case 0: return {mag, 0.0};
        case 1: return {0.0, mag};
        case 2: return {-mag, 0.0};
        default: return {0.0, -mag};
    }
}

std::vector<Rational> rational_point(std::span<const int> xi) {
    std::vector<Rational> out(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = Rational(xi[i]);
    return out;
}

bool all_zero(std::span<const int> xi) {
    for (int v : xi)
        if (v != 0) return false;
    return true;
}

// Dense double matrix from an exact rational evaluation.
std::vector<double> to_double(const RatMatrix& m) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i) * static_cast<std::size_t>(m.cols()) +
                static_cast<std::size_t>(j)] = m.at(i, j).get_d();
    return out;
}

}  // namespace

TorusField apply_diffop(const DiffOp& op, const TorusField& w) {
    if (op.dim_from != w.d()) throw DimensionMismatch("apply_diffop: fiber dimension mismatch");
    if (op.n != w.n()) throw DimensionMismatch("apply_diffop: space dimension mismatch");
    const Lattice lat = w.lattice();
    const PolyMatrix sym = symbol_of(op);
    const std::complex<double> factor = two_pi_i_pow(op.order);
    TorusField out(w.n(), op.dim_to, w.m(), w.real_flag());

    std::vector<int> idx(static_cast<std::size_t>(op.n));
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        std::vector<int> sf(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) sf[i] = lat.signed_freq(idx[static_cast<std::size_t>(i)]);
        const auto xi = rational_point(sf);
        const RatMatrix a = sym.eval(std::span<const Rational>(xi));
        for (int i = 0; i < op.dim_to; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < op.dim_from; ++j) {
                const double entry = a.at(i, j).get_d();
                if (entry != 0.0) acc += entry * w.at(p, j);
            }
            out.at(p, i) = factor * acc;
        }
    }
    return out;
}

GridField apply_diffop(const DiffOp& op, const GridField& w) {
    return dft_inverse(apply_diffop(op, dft_forward(w)));
}

AfreeProjector::AfreeProjector(DiffOp a)
    : op_(std::move(a)), sym_(symbol_of(op_)), pinv_(pseudoinverse_symbol(sym_)) {}

RatMatrix AfreeProjector::projector_at(std::span<const Rational> xi) const {
    RatMatrix p = RatMatrix::identity(op_.dim_from);
    if (pinv_.rank == 0) return p;  // zero symbol: everything is A-free
    const Rational den = pinv_.denominator.eval(xi);
    if (den == 0) throw NotConstantRank("projector undefined: a_r vanishes at a sample frequency");
    const RatMatrix num = pinv_.numerator.eval(xi);
    const RatMatrix a = sym_.eval(xi);
    const RatMatrix correction = (num * a).scaled(Rational(1) / den);
    return p - correction;
}

TorusField AfreeProjector::project(const TorusField& w) const {
    if (op_.dim_from != w.d()) throw DimensionMismatch("project_afree: fiber dimension mismatch");
    if (op_.n != w.n()) throw DimensionMismatch("project_afree: space dimension mismatch");
    const Lattice lat = w.lattice();
    TorusField out(w.n(), w.d(), w.m(), w.real_flag());

    std::vector<int> idx(static_cast<std::size_t>(op_.n));
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        std::vector<int> sf(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) sf[i] = lat.signed_freq(idx[static_cast<std::size_t>(i)]);
        if (all_zero(sf)) {
            for (int c = 0; c < w.d(); ++c) out.at(p, c) = w.at(p, c);  // mean is A-free
            continue;
        }
        const auto xi = rational_point(sf);
        const std::vector<double> proj = to_double(projector_at(std::span<const Rational>(xi)));
        const int d = w.d();
        for (int i = 0; i < d; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < d; ++j) {
                const double entry = proj[static_cast<std::size_t>(i * d + j)];
                if (entry != 0.0) acc += entry * w.at(p, j);
            }
            out.at(p, i) = acc;
        }
    }
    return out;
}

GridField AfreeProjector::project(const GridField& w) const {
    return dft_inverse(project(dft_forward(w)));
}

TorusField project_afree(const DiffOp& a, const TorusField& w) {
    return AfreeProjector(a).project(w);
}

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric matrix, values descending.
void jacobi_eigh(std::vector<double>& a, int n, std::vector<double>& q) {
    q.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i * n + i)] = 1.0;
    auto at = [&](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<std::size_t>(i * n + j)];
    };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * at(a, i, j) * at(a, i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n - 1; ++p)
            for (int qi = p + 1; qi < n; ++qi) {
                const double apq = at(a, p, qi);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(a, qi, qi) - at(a, p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(a, k, p), akq = at(a, k, qi);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, qi) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(a, p, k), aqk = at(a, qi, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, qi, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double qkp = at(q, k, p), qkq = at(q, k, qi);
                    at(q, k, p) = c * qkp - s * qkq;
                    at(q, k, qi) = s * qkp + c * qkq;
                }
            }
    }
}

}  // namespace

TorusField project_afree_float(const DiffOp& a, const TorusField& w) {
    if (a.dim_from != w.d()) throw DimensionMismatch("project_afree_float: fiber mismatch");
    const PolyMatrix sym = symbol_of(a);
    const int r = generic_rank_of_symbol(sym);
    const Lattice lat = w.lattice();
    TorusField out(w.n(), w.d(), w.m(), w.real_flag());
    const int rows = a.dim_to, cols = a.dim_from;

    std::vector<int> idx(static_cast<std::size_t>(a.n));
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        std::vector<int> sf(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) sf[i] = lat.signed_freq(idx[static_cast<std::size_t>(i)]);
        if (all_zero(sf)) {
            for (int c = 0; c < w.d(); ++c) out.at(p, c) = w.at(p, c);
            continue;
        }
        const auto xi = rational_point(sf);
        const std::vector<double> am = to_double(sym.eval(std::span<const Rational>(xi)));
        // H = A A^T, eigendecomposition, pseudo-inverse truncated at rank r.
        std::vector<double> h(static_cast<std::size_t>(rows) * static_cast<std::size_t>(rows), 0.0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < rows; ++j) {
                double s = 0.0;
                for (int k = 0; k < cols; ++k)
                    s += am[static_cast<std::size_t>(i * cols + k)] *
                         am[static_cast<std::size_t>(j * cols + k)];
                h[static_cast<std::size_t>(i * rows + j)] = s;
            }
        std::vector<double> qm;
        jacobi_eigh(h, rows, qm);
        std::vector<std::pair<double, int>> eig(static_cast<std::size_t>(rows));
        for (int i = 0; i < rows; ++i)
            eig[static_cast<std::size_t>(i)] = {h[static_cast<std::size_t>(i * rows + i)], i};
        std::sort(eig.begin(), eig.end(), [](auto& x, auto& y) { return x.first > y.first; });
        // Hplus = Q diag(1/lambda_(1..r)) Q^T
        std::vector<double> hplus(static_cast<std::size_t>(rows) * static_cast<std::size_t>(rows), 0.0);
        for (int e = 0; e < r; ++e) {
            const auto [lambda, col] = eig[static_cast<std::size_t>(e)];
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < rows; ++j)
                    hplus[static_cast<std::size_t>(i * rows + j)] +=
                        qm[static_cast<std::size_t>(i * rows + col)] *
                        qm[static_cast<std::size_t>(j * rows + col)] / lambda;
        }
        // P = Id - A^T Hplus A
        const int d = cols;
        std::vector<double> proj(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
        for (int i = 0; i < d; ++i) proj[static_cast<std::size_t>(i * d + i)] = 1.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double s = 0.0;
                for (int u = 0; u < rows; ++u)
                    for (int v = 0; v < rows; ++v)
                        s += am[static_cast<std::size_t>(u * cols + i)] *
                             hplus[static_cast<std::size_t>(u * rows + v)] *
                             am[static_cast<std::size_t>(v * cols + j)];
                proj[static_cast<std::size_t>(i * d + j)] -= s;
            }
        for (int i = 0; i < d; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < d; ++j) acc += proj[static_cast<std::size_t>(i * d + j)] * w.at(p, j);
            out.at(p, i) = acc;
        }
    }
    return out;
}

TorusField recover_potential(const DiffOp& b, const TorusField& w, const RecoverOptions& opts) {
    if (b.dim_to != w.d()) throw DimensionMismatch("recover_potential: fiber dimension mismatch");
    if (b.n != w.n()) throw DimensionMismatch("recover_potential: space dimension mismatch");

    double mean_mag = 0.0;
    for (const auto& z : w.mean()) mean_mag += std::norm(z);
    mean_mag = std::sqrt(mean_mag);
    if (!opts.subtract_mean && mean_mag > opts.mean_tol)
        throw NonZeroMean("recover_potential: field has nonzero mean " + std::to_string(mean_mag));

    if (opts.annihilator) {
        const double residual = apply_diffop(*opts.annihilator, w).l2_norm();
        const double scale = w.l2_norm();
        if (residual > opts.afree_tol * std::max(scale, 1e-300))
            throw NotAFree("recover_potential: ||A w|| = " + std::to_string(residual) +
                           " exceeds tolerance");
    }

    const PolyMatrix sym = symbol_of(b);
    const SymbolPseudoInverse pinv = pseudoinverse_symbol(sym);
    const std::complex<double> factor = 1.0 / two_pi_i_pow(b.order);
    const Lattice lat = w.lattice();
    TorusField out(w.n(), b.dim_from, w.m(), w.real_flag());

    std::vector<int> idx(static_cast<std::size_t>(b.n));
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        std::vector<int> sf(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) sf[i] = lat.signed_freq(idx[static_cast<std::size_t>(i)]);
        if (all_zero(sf)) continue;  // u-hat(0) = 0
        const auto xi = rational_point(sf);
        const Rational den = pinv.denominator.eval(std::span<const Rational>(xi));
        if (den == 0)
            throw NotConstantRank("recover_potential: B^+ undefined at a lattice frequency");
        const RatMatrix num = pinv.numerator.eval(std::span<const Rational>(xi));
        const double dinv = 1.0 / den.get_d();
        for (int i = 0; i < b.dim_from; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < b.dim_to; ++j) {
                const double entry = num.at(i, j).get_d() * dinv;
                if (entry != 0.0) acc += entry * w.at(p, j);
            }
            out.at(p, i) = factor * acc;
        }
    }
    return out;
}

double sobolev_norm(const TorusField& w, int order) {
    const Lattice lat = w.lattice();
    std::vector<int> idx(static_cast<std::size_t>(w.n()));
    double acc = 0.0;
    const std::size_t np = w.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        double xi2 = 0.0;
        for (int v : idx) {
            const double s = lat.signed_freq(v);
            xi2 += s * s;
        }
        const double weight = std::pow(1.0 + 4.0 * M_PI * M_PI * xi2, order);
        for (int c = 0; c < w.d(); ++c) acc += std::norm(w.at(p, c)) * weight;
    }
    return std::sqrt(acc);
}

TorusField random_field(int n, int d, int m, int band, bool zero_mean, std::uint64_t seed) {
    if (band < 0 || 2 * band >= m)
        throw ResolutionError("random_field: band must satisfy |xi| <= band < m/2");
    TorusField out(n, d, m, true);
    const Lattice lat = out.lattice();
    Rng rng(seed);

    std::vector<int> idx(static_cast<std::size_t>(n)), mirror(static_cast<std::size_t>(n));
    const std::size_t np = out.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        bool in_band = true;
        for (int v : idx) in_band = in_band && std::abs(lat.signed_freq(v)) <= band;
        if (!in_band) continue;
        bool is_mean = true;
        for (int v : idx) is_mean = is_mean && v == 0;
        if (is_mean && zero_mean) continue;

        for (int i = 0; i < n; ++i) mirror[static_cast<std::size_t>(i)] = -idx[static_cast<std::size_t>(i)];
        const std::size_t q = lat.flatten(mirror);
        if (q < p) continue;  // handled at the mirror point
        if (q == p) {
            for (int c = 0; c < d; ++c) out.at(p, c) = {rng.gaussian(), 0.0};
        } else {
            for (int c = 0; c < d; ++c) {
                const std::complex<double> z{rng.gaussian() * M_SQRT1_2,
                                             rng.gaussian() * M_SQRT1_2};
                out.at(p, c) = z;
                out.at(q, c) = std::conj(z);
            }
        }
    }
    return out;
}

}  // namespace potkit
