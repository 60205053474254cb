#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "potkit/cutoff.hpp"
#include "potkit/grid.hpp"
#include "potkit/integrand.hpp"
#include "potkit/spectral.hpp"
#include "potkit/synthesis.hpp"

namespace potkit {

// Pointwise radial truncation tau_alpha: fibers with |w| > alpha are scaled
// back to norm alpha.
GridField truncate(const GridField& w, double alpha);

// Step-III margin rule s = max_m ||D^{l-m} u||^{1/(2m)}, clamped to
// [min_margin, 1/4]; all-zero norm tables return min_margin.
double cutoff_scale(std::span<const double> norm_table, double min_margin = 1.0 / 64.0);

// Pointwise product with the tensor smoothstep; the boundary band (distance
// <= margin/2 per axis) comes out exactly zero.
GridField smooth_cutoff(const GridField& w, const CutoffProfile& profile);

// Periodic convolution with a normalized radial polynomial bump of support
// radius eps >= 2 grid spacings; preserves the mean.
GridField mollify(const GridField& w, double eps);

// B(rho * u) evaluated pointwise by the Leibniz rule: the trig-polynomial part
// is differentiated spectrally (exact for band-limited data), the cutoff
// analytically. Inside the dead zone every term vanishes identically, so the
// output is exactly zero there. Also returns rho*u and any requested
// derivatives d^gamma(rho u).
struct CutoffFields {
    GridField u;   // rho * u
    GridField bu;  // B(rho * u)
    std::map<MultiIndex, GridField, GrlexLess> derivs;
};
CutoffFields apply_cutoff_and_operator(const DiffOp& b, const TorusField& u_hat,
                                       const CutoffProfile& profile,
                                       std::span<const MultiIndex> extra_derivs = {});

// ||D^j u||_{L2}^2 = sum_xi |u-hat(xi)|^2 (2 pi |xi|)^{2j}
double derivative_l2_norm(const TorusField& u_hat, int j);

struct PipelineParams {
    std::vector<double> alpha_ladder;  // explicit per-element truncation levels
    double alpha_scale = 4.0;          // auto ladder: scale * max ||w_j||_L2 * growth^(j-1)
    double alpha_growth = 2.0;
    double step1_margin_cells = 6.0;   // delta_I = max(cells*h/j, 4h)
    double mollify_cells = 2.0;        // eps = cells * h
    int profile_order = 0;             // 0: max(order(A), order(B)) + 1
    double min_margin = 1.0 / 64.0;
    long verify_samples = 20;
    std::uint64_t seed = 0;
};

// key=value form used by the CLI; unknown keys are errors.
PipelineParams parse_pipeline_params(std::span<const std::string> entries);

struct PipelineElement {
    GridField potential;       // u_j, exactly zero on its boundary band
    GridField field;           // B u_j
    double alpha = 0.0;
    double step1_margin = 0.0;
    double mollify_eps = 0.0;
    double margin = 0.0;       // Step-III cutoff margin s_j
    std::vector<double> norm_table;   // ||D^{l-m} u||, m = 1..l
    double residual_inner = 0.0;      // ||A B u|| of the band-limited part (valid on the inner box)
    std::vector<double> moment_diffs; // inner-box first/second moment gaps vs input
};

struct PipelineResult {
    std::vector<PipelineElement> elements;
    std::vector<Integrand> moment_set;  // integrands used for moment_diffs
};

// Three-stage pipeline: truncate with a diverging ladder, cut off, mollify;
// project A-free; recover the potential, cut off with the margin rule, and
// differentiate. The pair (a, b) is re-verified before use.
PipelineResult compactify_sequence(const DiffOp& a, const DiffOp& b,
                                   std::span<const GridField> fields,
                                   const PipelineParams& params = {});

struct ElementDiagnostics {
    double lp_norm = 0.0;               // L2 norm
    double neg_sobolev_residual = 0.0;  // ||A w||_{-k,2}, when the operator is given
    std::vector<double> moments;
};

struct SequenceDiagnostics {
    std::vector<ElementDiagnostics> elements;
    std::vector<double> alpha_ladder;
    std::vector<double> tail_mass;  // sup_j of integral over {|w_j| > alpha} of |w_j|^2
};

// Midpoint-rule moments, L2 norms, W^{-k,2} residuals, and the p-uniform
// integrability ladder (p = 2).
SequenceDiagnostics ym_moments(std::span<const GridField> fields,
                               std::span<const Integrand> integrands,
                               const DiffOp* op = nullptr,
                               std::span<const double> alpha_ladder = {});

// Mean of phi(w(x)) over grid points inside [lo, hi]^n.
double moment_on_box(const GridField& w, const Integrand& phi, double lo, double hi);

}  // namespace potkit
