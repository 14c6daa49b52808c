#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wdmxpm/config.hpp"
#include "wdmxpm/signal.hpp"

namespace wdmxpm {

// Random phase potential nu(z, t) in 1/km sampled on a SimGrid:
// values[i][j] is slice i (of grid.n_zsteps) at time sample j.
//
// correlation_convention records how the time correlation is discretized.
// "white-discrete" means each lattice sample is N(0, spectral_density/dt),
// the lattice realization of a white process with E[nu(t)nu(t')] =
// spectral_density * delta(t - t'); slices are independent.
struct PotentialField {
  std::vector<std::vector<double>> values;
  SimGrid grid;
  std::string correlation_convention = "white-discrete";
  double spectral_density = 0.0;  // sigma_nu_sq behind the samples, if known
};

// Aggregate potential seen by the probe at distance z: the XPM factor
// 2 gamma e^{-alpha z} sum_l |x_l(t)|^2 over the interfering channels.
// All neighbor grids must match; returns one real slice over t, in 1/km.
std::vector<double> xpm_potential_from_signals(
    const std::vector<SignalGrid>& neighbor_signals, const LinkConfig& link,
    double z);

// Exact harmonic number H_m = sum_{i=1}^m 1/i; m >= 1.
double harmonic_number(std::size_t m);

// White-noise strength of the aggregate XPM potential for a fully loaded
// link: sigma_nu_sq = 2 P^2 H_{N/2} / (beta2 delta_nu^2), evaluated on the
// stored field values. With use_log_approx the harmonic number is replaced
// by ln(N/2), the large-N form; requires n_channels >= 4 in that case so
// the log is positive.
double sigma_nu_sq(const LinkConfig& link, bool use_log_approx = false);

// Draws a white-discrete potential: every lattice sample i.i.d.
// N(0, sigma_nu_sq/dt), slices independent. Deterministic in (grid, seed).
PotentialField sample_surrogate_potential(const SimGrid& grid,
                                          double sigma_nu_sq_value,
                                          std::uint64_t seed);

// Moment summary of an ensemble of potential slices (each a time profile).
// Variance is the population variance pooled over time samples about the
// per-sample ensemble mean.
struct PotentialMoments {
  std::vector<double> mean;  // per time sample
  double overall_mean = 0.0;
  double overall_variance = 0.0;
  std::size_t n_slices = 0;
};

PotentialMoments empirical_potential_moments(
    const std::vector<std::vector<double>>& slices);

}  // namespace wdmxpm
