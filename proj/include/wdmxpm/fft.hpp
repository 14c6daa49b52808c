#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wdmxpm {

using cdouble = std::complex<double>;

// In-place DFT pair. fft_forward computes X_k = sum_j x_j e^{-2 pi i jk/n}
// (analysis against e^{-i omega t}); fft_inverse is its exact inverse
// including the 1/n factor, so inverse(forward(x)) == x to rounding.
// Thread safe; plans are cached per transform size.
void fft_forward(std::vector<cdouble>& x);
void fft_inverse(std::vector<cdouble>& x);

// Angular frequency of DFT bin k on an n-point lattice with spacing dt,
// using the wrapped layout (bins >= n/2 are negative frequencies).
double omega_at(std::size_t k, std::size_t n, double dt);

}  // namespace wdmxpm
