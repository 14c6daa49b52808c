#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdmxpm/config.hpp"
#include "wdmxpm/signal.hpp"
#include "wdmxpm/xpm_stats.hpp"

namespace wdmxpm {

// One point evaluation of the span Green's function, with the inputs
// recorded so the number is replayable.
struct GreenEvaluation {
  cdouble value;
  double t = 0.0;
  double t_prime = 0.0;
  std::size_t m_steps = 0;
  std::string potential_ref;  // convention and strength of the field used
};

// Sample moments of the phase statistic U over a Monte Carlo ensemble.
struct UStatistics {
  cdouble sample_mean;
  double sample_variance = 0.0;     // (1/n) sum |U_i - mean|^2
  std::size_t n_trials = 0;
  double target_variance = 0.0;     // sigma_nu_sq * (t - t')
  double gaussianity_pvalue = 0.0;  // min of the real/imag part p-values
  double pvalue_real = 0.0;
  double pvalue_imag = 0.0;
  double mean_stderr = 0.0;         // sqrt(sample_variance / n_trials)
  double t = 0.0;
  double t_prime = 0.0;
  std::uint64_t seed = 0;
};

// Green's function through the frozen potential, evaluated by m_steps of
// the same split-step cascade as propagate_surrogate acting on a discrete
// delta at the lattice site nearest t_prime (amplitude 1/dt), read out at
// the site nearest t. The potential is resampled in z to m_steps slices by
// nearest-slice lookup when its own slice count differs.
GreenEvaluation green_discrete(double t, double t_prime,
                               const PotentialField& potential,
                               const LinkConfig& link, std::size_t m_steps);

// Fresnel-weighted line integral of the potential between (t_prime, 0) and
// (t, L):
//   U = int_0^1 d alpha int_{t'}^{t} dta
//       e^{-i [ (t-ta)^2/alpha + (ta-t')^2/(1-alpha) ] / (2 beta2 L)}
//       nu(z(alpha), ta),        z(alpha) = (1 - alpha) L.
// Quadrature: midpoint in alpha (the endpoints are non-integrable phase
// singularities), trapezoid in ta on the lattice restricted to [t', t],
// optionally refined by linear interpolation of nu. Returns 0 at t == t'.
cdouble compute_U(const PotentialField& potential, double t, double t_prime,
                  const LinkConfig& link, std::size_t alpha_steps = 32,
                  std::size_t time_refine = 1);

// Draws n_trials single-slice white-discrete potentials at the strength
// sigma_nu_sq(link), computes U for each, and summarizes: the contract is
// mean -> 0 and variance -> sigma_nu_sq * (t - t'), with both parts of U
// passing an omnibus normality test. Trials use derived per-trial seeds and
// may run on WDMXPM_WORKERS threads with identical results.
// sigma_nu_sq_override replaces the config-derived strength when given
// (a valid config always has P > 0, so strength 0 is only reachable here).
UStatistics validate_U_distribution(
    const LinkConfig& link, const SimGrid& grid, double t, double t_prime,
    std::size_t n_trials, std::uint64_t seed,
    std::optional<double> sigma_nu_sq_override = std::nullopt);

// Exponentially resummed form: free_propagator(t, t') * exp(-i L u_value).
cdouble green_resummed(double t, double t_prime, cdouble u_value,
                       const LinkConfig& link);

// D'Agostino-Pearson K^2 omnibus normality test p-value (skewness and
// kurtosis combined, chi^2 with 2 dof). Needs n >= 20.
double normality_pvalue(const std::vector<double>& samples);

// One-record text export of UStatistics in the report format.
std::string format_u_statistics(const UStatistics& stats);

}  // namespace wdmxpm
