#pragma once

#include <vector>

#include "wdmxpm/config.hpp"
#include "wdmxpm/signal.hpp"
#include "wdmxpm/xpm_stats.hpp"

namespace wdmxpm {

// Strang split-step solver for the coupled per-channel envelopes in the
// retarded frame of channel 0. Each z-step applies: linear half-step in
// frequency (dispersion phase plus per-channel walk-off ramp), nonlinear
// full step with phase gamma (|x_k|^2 + 2 sum_{l != k} |x_l|^2)
// e^{-alpha z_mid} dz, linear half-step. Envelopes are evolved lossless and
// the common amplitude factor e^{-alpha L / 2} is applied once at z = L, so
// output energy decays by exactly e^{-alpha L} when gamma = 0. Time
// boundary is periodic; the window must hold at least 4x the estimated
// dispersion-induced spread of each input (checked at runtime).
//
// Inputs may cover any subset of the channel indices -N/2..N/2 (absent
// channels are zero and stay zero); indices must be unique and each input
// must satisfy the average power constraint. beta2 = 0 is accepted here as
// the degenerate dispersionless case even though validate() flags it.
std::vector<SignalGrid> propagate_coupled(const std::vector<SignalGrid>& inputs,
                                          const LinkConfig& link,
                                          const SimGrid& grid);

// Split-step integrator for the probe-channel equation with a frozen
// external potential in 1/km: each of the potential's n_zsteps slices
// contributes F(dz/2) diag(e^{-i nu_i(t) dz}) F(dz/2) with F the spectral
// free step. Linear in the input; deterministic given the potential.
SignalGrid propagate_surrogate(const SignalGrid& x0,
                               const PotentialField& potential,
                               const LinkConfig& link);

// Unitary Fresnel kernel over the full span:
//   G(t, t') = e^{i pi/4} / sqrt(2 pi beta2 L) * e^{-i (t-t')^2 / (2 beta2 L)}.
// The e^{i pi/4} constant is fixed by the semigroup property
// int G_{L1}(t,s) G_{L2}(s,t') ds = G_{L1+L2}(t,t'); with it the kernel's
// frequency response is exactly e^{+i (beta2 L / 2) omega^2}.
cdouble free_propagator(double t, double t_prime, const LinkConfig& link);

// Convolution with the unitary Fresnel kernel, computed spectrally (the
// kernel's frequency response is a pure quadratic phase), so energy is
// preserved exactly on any grid. On grids satisfying the resonance
// condition t_window * dt = 2 pi beta2 L this equals the dt-weighted
// direct kernel summation. inverse = true applies the conjugate kernel.
// beta2 * L = 0 returns x unchanged.
SignalGrid chirp_transform(const SignalGrid& x, const LinkConfig& link,
                           bool inverse = false);

}  // namespace wdmxpm
