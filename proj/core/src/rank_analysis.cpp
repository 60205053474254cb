#include "potkit/rank_analysis.hpp"

#include <algorithm>

#include "potkit/charpoly.hpp"
#include "potkit/interval.hpp"
#include "potkit/rng.hpp"

namespace potkit {

RankReport generic_rank(const DiffOp& op) {
    RankReport report;
    PolyMatrix sym = symbol_of(op);
    CharPoly cp = faddeev_leverrier(sym * sym.transpose());
    report.char_coeffs = cp.coeffs;
    report.generic_rank = 0;
    for (std::size_t j = 1; j < cp.coeffs.size(); ++j)
        if (!cp.coeffs[j].is_zero()) report.generic_rank = static_cast<int>(j);
    return report;
}

Poly rank_indicator(const RankReport& report) {
    const Poly& a_r = report.char_coeffs[static_cast<std::size_t>(report.generic_rank)];
    return report.generic_rank % 2 == 0 ? a_r : -a_r;
}

namespace {

// Zero-coordinate masks ordered so trailing axes are zeroed first; rank drops
// of diagonal-like symbols sit on coordinate subspaces.
std::vector<unsigned> subspace_masks(int n) {
    std::vector<unsigned> masks;
    for (unsigned m = 1; m + 1 < (1u << n); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        return a > b;
    });
    return masks;
}

bool is_zero_vector(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace

std::optional<std::vector<Rational>> falsify_constant_rank(const DiffOp& op,
                                                           const RankReport& report,
                                                           long budget, std::uint64_t seed) {
    const int r = report.generic_rank;
    if (r == 0) return std::nullopt;  // identically-zero symbol cannot drop
    const int n = op.n;
    const PolyMatrix sym = symbol_of(op);
    const Poly e_r = rank_indicator(report);
    Rng rng(seed);

    auto try_point = [&](const std::vector<Rational>& xi) -> bool {
        if (is_zero_vector(xi)) return false;
        if (e_r.eval(std::span<const Rational>(xi)) != 0) return false;
        return sym.eval(std::span<const Rational>(xi)).rank() < r;
    };

    const auto masks = n > 1 ? subspace_masks(n) : std::vector<unsigned>{};
    long used = 0;

    // Deterministic first sweep: all ones on each free coordinate pattern.
    for (unsigned mask : masks) {
        if (used >= budget) return std::nullopt;
        std::vector<Rational> xi(static_cast<std::size_t>(n), Rational(1));
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) xi[static_cast<std::size_t>(i)] = 0;
        ++used;
        if (try_point(xi)) return xi;
    }

    // Random phase: alternate subspace-supported and full-support points.
    std::size_t mask_cursor = 0;
    while (used < budget) {
        std::vector<Rational> xi(static_cast<std::size_t>(n));
        if (!masks.empty() && (used % 2 == 0)) {
            unsigned mask = masks[mask_cursor++ % masks.size()];
            for (int i = 0; i < n; ++i)
                xi[static_cast<std::size_t>(i)] =
                    (mask & (1u << i)) ? Rational(0) : rng.rational_nonzero();
        } else {
            for (auto& c : xi) c = rng.rational_nonzero();
        }
        ++used;
        if (try_point(xi)) return xi;
    }
    return std::nullopt;
}

namespace {

struct FaceSearch {
    const Poly& indicator;
    const PolyMatrix& sym;
    int generic_rank;
    int max_depth;
    int certified_depth = 0;
    bool inconclusive = false;
    long samples = 0;
    double min_sampled = 0.0;
    bool have_sample = false;
    std::optional<std::vector<Rational>> witness;

    // Depth-first subdivision; returns false once a witness is found.
    bool process(std::vector<RatInterval>& box, int depth) {
        RatInterval bound = interval_eval(indicator, box);
        if (bound.lo > 0) {
            certified_depth = std::max(certified_depth, depth);
            return true;
        }
        std::vector<Rational> center(box.size());
        for (std::size_t i = 0; i < box.size(); ++i) center[i] = box[i].midpoint();
        Rational value = indicator.eval(std::span<const Rational>(center));
        ++samples;
        const double vd = value.get_d();
        if (!have_sample || vd < min_sampled) {
            min_sampled = vd;
            have_sample = true;
        }
        if (value == 0 && !is_zero_vector(center) &&
            sym.eval(std::span<const Rational>(center)).rank() < generic_rank) {
            witness = center;
            return false;
        }
        if (depth >= max_depth) {
            inconclusive = true;
            return true;
        }
        // Split the widest interval; point intervals (the fixed face axis) stay.
        std::size_t axis = 0;
        Rational best_width(-1);
        for (std::size_t i = 0; i < box.size(); ++i)
            if (box[i].width() > best_width) {
                best_width = box[i].width();
                axis = i;
            }
        const RatInterval whole = box[axis];
        const Rational mid = whole.midpoint();
        box[axis] = RatInterval(whole.lo, mid);
        if (!process(box, depth + 1)) return false;
        box[axis] = RatInterval(mid, whole.hi);
        if (!process(box, depth + 1)) return false;
        box[axis] = whole;
        return true;
    }
};

}  // namespace

Certificate certify_constant_rank(const DiffOp& op, const RankReport& report, int max_depth) {
    Certificate cert;
    if (report.generic_rank == 0) {
        cert.kind = Certificate::Kind::Certified;  // rank 0 everywhere, nothing to drop
        cert.depth = 0;
        return cert;
    }
    const Poly e_r = rank_indicator(report);
    const PolyMatrix sym = symbol_of(op);
    FaceSearch search{e_r, sym, report.generic_rank, max_depth, 0, false, 0, 0.0, false, std::nullopt};

    for (int axis = 0; axis < op.n && !search.witness; ++axis) {
        for (int sign = 0; sign < 2 && !search.witness; ++sign) {
            std::vector<RatInterval> box(static_cast<std::size_t>(op.n),
                                         RatInterval(Rational(-1), Rational(1)));
            box[static_cast<std::size_t>(axis)] = RatInterval(Rational(sign == 0 ? 1 : -1));
            search.process(box, 0);
        }
    }

    cert.samples = search.samples;
    cert.min_sampled = search.have_sample ? search.min_sampled : 0.0;
    if (search.witness) {
        cert.kind = Certificate::Kind::Falsified;
        cert.witness = *search.witness;
    } else if (search.inconclusive) {
        cert.kind = Certificate::Kind::Inconclusive;
    } else {
        cert.kind = Certificate::Kind::Certified;
        cert.depth = search.certified_depth;
    }
    return cert;
}

}  // namespace potkit
