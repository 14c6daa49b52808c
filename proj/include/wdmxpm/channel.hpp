#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wdmxpm/config.hpp"
#include "wdmxpm/signal.hpp"

namespace wdmxpm {

// Lumped phase-noise channel parameters: y = e^{-iU} x + n with
// U ~ N(0, sigma_U_sq) and n circularly symmetric complex Gaussian of
// total variance sigma_N_sq per sample (sigma_N_sq / 2 per quadrature).
struct PhaseNoiseChannelSpec {
  double sigma_U_sq = 0.0;  // rad^2, >= 0
  double sigma_N_sq = 0.0;  // W, >= 0
  std::uint64_t seed = 0;
};

// Lumped phase variance sigma_nu_sq * (L / nu_g) * L^2, the stationary
// t - t' ~= L / nu_g approximation. Field values are used as stored.
double sigma_U_sq_lumped(double sigma_nu_sq_value, const LinkConfig& link);

// One phase draw U for the whole block, then i.i.d. complex noise per
// sample. Deterministic given spec.seed; the phase and noise streams are
// independent, so changing sigma_N_sq never changes the phase draw.
SignalGrid apply_lumped_channel(const SignalGrid& x_tilde,
                                const PhaseNoiseChannelSpec& spec);

// Memoryless discrete-time channel: y_k = e^{-i u_k} x_k + n_k with
// independent per-symbol draws. max_power, when finite, enforces the
// average power constraint (1/n) sum |x_k|^2 <= max_power.
std::vector<cdouble> discrete_channel(
    const std::vector<cdouble>& x_seq, const PhaseNoiseChannelSpec& spec,
    double max_power = std::numeric_limits<double>::infinity());

// Columnar export (index, Re_in, Im_in, Re_out, Im_out); one row per symbol.
std::string format_symbols(const std::vector<cdouble>& in,
                           const std::vector<cdouble>& out);

}  // namespace wdmxpm
