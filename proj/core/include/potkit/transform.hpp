#pragma once

#include "potkit/grid.hpp"

namespace potkit {

// Discrete Fourier transform with the integral normalization
//   w-hat(xi) = (1/m^n) sum_j w(x_j) exp(-2 pi i x_j . xi),
// so coefficients approximate the torus transform convention. The inverse is
// the plain unnormalized synthesis sum; the pair round-trips to machine
// precision.
TorusField dft_forward(const GridField& samples);

// Real part of the synthesis sum; callers working with non-Hermitian spectra
// should use dft_inverse_complex.
GridField dft_inverse(const TorusField& coeffs);

// Full complex synthesis samples, fiber-contiguous.
std::vector<std::complex<double>> dft_inverse_complex(const TorusField& coeffs);

}  // namespace potkit
