#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wdmxpm/channel.hpp"
#include "wdmxpm/config.hpp"

namespace wdmxpm {

// All bounds are the high-SNR asymptotic form; the o(1) remainder is
// omitted, so reported values are upper bounds only as P/sigma_N_sq grows.

// h = (1/2) ln(2 pi e sigma_sq), nats. sigma_sq <= 0 is an error.
double gaussian_differential_entropy(double sigma_sq);

inline double nats_to_bits(double nats) {
  return nats / 0.69314718055994530941723212145818;
}

// (1/2) ln(1 + 2 pi^2 e^{-2 h_u} P / sigma_N_sq), nats.
double capacity_bound_entropy_form(double p, double sigma_n_sq, double h_u);

// The scalar multiplying 1/(P sigma_N_sq) inside the log of the parametric
// form: (pi/e) * (beta2 dnu^2 / (2 ln(N/2))) * (nu_g / L^3), with
// channel_spacing converted from GHz to 1/ps and the other fields used as
// stored. exact_harmonic replaces ln(N/2) by the exact harmonic number.
double param_form_coefficient(const LinkConfig& link,
                              bool exact_harmonic = false);

// (1/2) ln(1 + coefficient / (P sigma_N_sq)), nats. Requires n_channels
// >= 4 (ln(N/2) vanishes at N = 2).
double capacity_bound_param_form(const LinkConfig& link, double p,
                                 double sigma_n_sq,
                                 bool exact_harmonic = false);

// The lumped phase variance that makes the entropy form reproduce the
// parametric form exactly: 2 P^2 ln(N/2) L^3 / (beta2 dnu^2 nu_g), with the
// same GHz -> 1/ps conversion for dnu.
double sigma_U_sq_high_snr(const LinkConfig& link, double p,
                           bool exact_harmonic = false);

struct CapacityRow {
  double sweep_value = 0.0;
  double bound_entropy_nats = 0.0;
  double bound_param_nats = 0.0;
  double coefficient = 0.0;
  double mi_estimate = std::numeric_limits<double>::quiet_NaN();
  double mi_stderr = std::numeric_limits<double>::quiet_NaN();
};

struct CapacityReport {
  std::string sweep_variable;
  std::vector<CapacityRow> rows;
  double sigma_n_sq = 0.0;
  std::uint64_t seed = 0;
};

// Evaluates both bound forms over the grid of values for one variable in
// {channel_power, length_km, n_channels, beta2, channel_spacing,
// group_velocity} (aliases P, L, N, delta_nu, nu_g accepted). Any invalid
// point aborts with its index. The two forms agree to 1e-12 relative on
// every row by construction of sigma_U_sq_high_snr.
CapacityReport capacity_sweep(const LinkConfig& link,
                              const std::string& sweep_variable,
                              const std::vector<double>& grid,
                              double sigma_n_sq);

struct MiEstimate {
  double mi_nats = 0.0;
  double stderr_nats = 0.0;
  std::size_t n_samples = 0;
};

// Monte Carlo mutual information of the discrete phase-noise channel for a
// finite constellation. The conditional density integrates the phase draw
// numerically (Simpson, panels doubled until 1e-6 relative stability;
// wrapped to [-pi, pi] when the phase std spans the circle). Requires
// n_samples >= 1000, sigma_N_sq > 0, probabilities summing to 1. max_power,
// when finite, enforces the constellation's average power constraint.
MiEstimate mi_monte_carlo(
    const std::vector<cdouble>& constellation,
    const std::vector<double>& probabilities, const PhaseNoiseChannelSpec& spec,
    std::size_t n_samples, std::uint64_t seed,
    double max_power = std::numeric_limits<double>::infinity());

// Columnar report: header block, then one row per sweep point with columns
// sweep_value bound_nats bound_bits coefficient mi_estimate mi_stderr seed.
std::string format_capacity_report(const CapacityReport& report);

}  // namespace wdmxpm
