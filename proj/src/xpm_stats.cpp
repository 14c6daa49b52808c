#include "wdmxpm/xpm_stats.hpp"

#include <cmath>
#include <stdexcept>

#include "wdmxpm/rng.hpp"

namespace wdmxpm {

std::vector<double> xpm_potential_from_signals(
    const std::vector<SignalGrid>& neighbor_signals, const LinkConfig& link,
    double z) {
  if (neighbor_signals.empty())
    throw std::invalid_argument("xpm_potential_from_signals: no neighbors");
  if (z < 0.0 || z > link.length_km)
    throw std::invalid_argument(
        "xpm_potential_from_signals: z outside [0, length_km]");
  const std::size_t n = neighbor_signals.front().grid.n_time;
  for (const auto& s : neighbor_signals) {
    if (s.grid.n_time != n ||
        s.grid.t_window != neighbor_signals.front().grid.t_window)
      throw std::invalid_argument(
          "xpm_potential_from_signals: neighbor grids differ");
    if (s.samples.size() != n)
      throw std::invalid_argument(
          "xpm_potential_from_signals: sample count does not match grid");
    if (s.channel_index == 0)
      throw std::invalid_argument(
          "xpm_potential_from_signals: channel 0 is the probe, not a neighbor");
  }
  const double scale = 2.0 * link.gamma * std::exp(-link.alpha * z);
  std::vector<double> slice(n, 0.0);
  for (const auto& s : neighbor_signals)
    for (std::size_t j = 0; j < n; ++j) slice[j] += scale * std::norm(s.samples[j]);
  return slice;
}

double harmonic_number(std::size_t m) {
  if (m < 1) throw std::invalid_argument("harmonic_number: m must be >= 1");
  double h = 0.0;
  // Summing small terms first keeps the rounding error near one ulp.
  for (std::size_t i = m; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

double sigma_nu_sq(const LinkConfig& link, bool use_log_approx) {
  std::vector<std::string> errs = validate(link, SimGrid{});
  for (const auto& e : errs)
    if (e.rfind("n_channels", 0) == 0 || e.rfind("beta2", 0) == 0 ||
        e.rfind("channel_spacing", 0) == 0 || e.rfind("channel_power", 0) == 0)
      throw std::invalid_argument("sigma_nu_sq: " + e);
  const std::size_t half = static_cast<std::size_t>(link.n_channels) / 2;
  double h;
  if (use_log_approx) {
    if (half < 2)
      throw std::invalid_argument(
          "sigma_nu_sq: log approximation needs n_channels >= 4");
    h = std::log(static_cast<double>(half));
  } else {
    h = harmonic_number(half);
  }
  const double p = link.channel_power;
  return 2.0 * p * p * h / (link.beta2 * link.channel_spacing * link.channel_spacing);
}

PotentialField sample_surrogate_potential(const SimGrid& grid,
                                          double sigma_nu_sq_value,
                                          std::uint64_t seed) {
  if (sigma_nu_sq_value < 0.0)
    throw std::invalid_argument(
        "sample_surrogate_potential: sigma_nu_sq must be nonnegative");
  PotentialField field;
  field.grid = grid;
  field.correlation_convention = "white-discrete";
  field.spectral_density = sigma_nu_sq_value;
  field.values.assign(grid.n_zsteps, std::vector<double>(grid.n_time, 0.0));
  if (sigma_nu_sq_value == 0.0) return field;
  const double sd = std::sqrt(sigma_nu_sq_value / grid.dt());
  for (std::size_t i = 0; i < grid.n_zsteps; ++i) {
    // Per-slice stream so slice i is reproducible independent of slice count.
    GaussianRng rng(derive_seed(seed, i));
    for (std::size_t j = 0; j < grid.n_time; ++j)
      field.values[i][j] = sd * rng.normal();
  }
  return field;
}

PotentialMoments empirical_potential_moments(
    const std::vector<std::vector<double>>& slices) {
  if (slices.size() < 2)
    throw std::invalid_argument(
        "empirical_potential_moments: need at least 2 slices");
  const std::size_t n = slices.front().size();
  if (n == 0)
    throw std::invalid_argument("empirical_potential_moments: empty slice");
  for (const auto& s : slices)
    if (s.size() != n)
      throw std::invalid_argument(
          "empirical_potential_moments: slice lengths differ");

  PotentialMoments m;
  m.n_slices = slices.size();
  m.mean.assign(n, 0.0);
  for (const auto& s : slices)
    for (std::size_t j = 0; j < n; ++j) m.mean[j] += s[j];
  const double inv = 1.0 / static_cast<double>(m.n_slices);
  for (auto& v : m.mean) v *= inv;

  double mean_acc = 0.0, var_acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) mean_acc += m.mean[j];
  m.overall_mean = mean_acc / static_cast<double>(n);
  for (const auto& s : slices)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = s[j] - m.mean[j];
      var_acc += d * d;
    }
  m.overall_variance = var_acc * inv / static_cast<double>(n);
  return m;
}

}  // namespace wdmxpm
