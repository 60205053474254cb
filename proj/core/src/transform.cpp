#include "potkit/transform.hpp"

#include <fftw3.h>

#include "potkit/errors.hpp"

namespace potkit {

namespace {

// One c2c transform of the full lattice for a single fiber component.
// FFTW_ESTIMATE keeps planning cheap and the algorithm choice reproducible
// for a fixed problem size.
void run_fftw(int n, int m, std::vector<std::complex<double>>& inout, int sign) {
    std::vector<int> dims(static_cast<std::size_t>(n), m);
    auto* buf = reinterpret_cast<fftw_complex*>(inout.data());
    fftw_plan plan = fftw_plan_dft(n, dims.data(), buf, buf, sign, FFTW_ESTIMATE);
    if (!plan) throw ResolutionError("fftw failed to plan transform");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

}  // namespace

TorusField dft_forward(const GridField& samples) {
    const int n = samples.n(), d = samples.d(), m = samples.m();
    TorusField out(n, d, m, true);
    const std::size_t np = samples.points();
    std::vector<std::complex<double>> buf(np);
    const double scale = 1.0 / static_cast<double>(np);
    for (int c = 0; c < d; ++c) {
        for (std::size_t p = 0; p < np; ++p) buf[p] = samples.at(p, c);
        run_fftw(n, m, buf, FFTW_FORWARD);
        for (std::size_t p = 0; p < np; ++p) out.at(p, c) = buf[p] * scale;
    }
    return out;
}

std::vector<std::complex<double>> dft_inverse_complex(const TorusField& coeffs) {
    const int n = coeffs.n(), d = coeffs.d(), m = coeffs.m();
    const std::size_t np = coeffs.points();
    std::vector<std::complex<double>> out(np * static_cast<std::size_t>(d));
    std::vector<std::complex<double>> buf(np);
    for (int c = 0; c < d; ++c) {
        for (std::size_t p = 0; p < np; ++p) buf[p] = coeffs.at(p, c);
        run_fftw(n, m, buf, FFTW_BACKWARD);
        for (std::size_t p = 0; p < np; ++p)
            out[p * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] = buf[p];
    }
    return out;
}

GridField dft_inverse(const TorusField& coeffs) {
    GridField out(coeffs.n(), coeffs.d(), coeffs.m());
    const auto full = dft_inverse_complex(coeffs);
    for (std::size_t i = 0; i < full.size(); ++i) out.data()[i] = full[i].real();
    return out;
}

}  // namespace potkit
