#include "wdmxpm/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wdmxpm/detail/parallel.hpp"
#include "wdmxpm/fft.hpp"

namespace wdmxpm {

namespace {

using detail::env_worker_count;
using detail::parallel_for;

constexpr double kPi = std::numbers::pi;

void check_same_grid(const SimGrid& a, const SimGrid& b, const char* what) {
  if (a.n_time != b.n_time || a.t_window != b.t_window)
    throw std::invalid_argument(std::string(what) + ": time grids differ");
}

// Spectral free step over `distance`: multiply bin k by
// e^{+i (beta2/2) omega_k^2 distance} and optionally a walk-off ramp
// e^{-i omega_k drift distance}. Exactly unitary.
void free_step(std::vector<cdouble>& x, const SimGrid& grid, double beta2,
               double distance, double drift = 0.0) {
  if (distance == 0.0 || (beta2 == 0.0 && drift == 0.0)) return;
  fft_forward(x);
  const std::size_t n = x.size();
  const double dt = grid.dt();
  for (std::size_t k = 0; k < n; ++k) {
    const double w = omega_at(k, n, dt);
    const double phase = 0.5 * beta2 * w * w * distance - w * drift * distance;
    x[k] *= cdouble(std::cos(phase), std::sin(phase));
  }
  fft_inverse(x);
}

// RMS angular bandwidth of a sample vector; 0 for the zero signal.
double rms_bandwidth(const std::vector<cdouble>& samples, const SimGrid& grid) {
  std::vector<cdouble> spec = samples;
  fft_forward(spec);
  const std::size_t n = spec.size();
  const double dt = grid.dt();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = omega_at(k, n, dt);
    const double p = std::norm(spec[k]);
    num += w * w * p;
    den += p;
  }
  if (den <= 0.0) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace

double average_power(const SignalGrid& s) {
  double acc = 0.0;
  for (const auto& v : s.samples) acc += std::norm(v);
  return s.samples.empty() ? 0.0 : acc / static_cast<double>(s.samples.size());
}

double signal_energy(const SignalGrid& s) {
  double acc = 0.0;
  for (const auto& v : s.samples) acc += std::norm(v);
  return acc * s.grid.dt();
}

std::vector<SignalGrid> propagate_coupled(const std::vector<SignalGrid>& inputs,
                                          const LinkConfig& link,
                                          const SimGrid& grid) {
  if (inputs.empty())
    throw std::invalid_argument("propagate_coupled: no input channels");
  const int half = link.n_channels / 2;
  std::vector<int> seen;
  for (const auto& s : inputs) {
    check_same_grid(s.grid, grid, "propagate_coupled");
    if (s.samples.size() != grid.n_time)
      throw std::invalid_argument(
          "propagate_coupled: sample count does not match grid");
    if (s.channel_index < -half || s.channel_index > half)
      throw std::invalid_argument(
          "propagate_coupled: channel_index " +
          std::to_string(s.channel_index) + " outside [-N/2, N/2]");
    if (std::find(seen.begin(), seen.end(), s.channel_index) != seen.end())
      throw std::invalid_argument("propagate_coupled: duplicate channel_index " +
                                  std::to_string(s.channel_index));
    seen.push_back(s.channel_index);
    if (average_power(s) > link.channel_power * (1.0 + 1e-12))
      throw std::invalid_argument(
          "propagate_coupled: power constraint violated for channel " +
          std::to_string(s.channel_index));
  }

  // Guard band: the periodic window must hold the dispersion-induced
  // spread, estimated per channel as beta2 * L * (RMS bandwidth).
  for (const auto& s : inputs) {
    const double spread =
        std::abs(link.beta2) * link.length_km * rms_bandwidth(s.samples, grid);
    if (grid.t_window < 4.0 * spread)
      throw std::invalid_argument(
          "propagate_coupled: t_window smaller than 4x dispersion spread for "
          "channel " +
          std::to_string(s.channel_index));
  }

  const int workers = env_worker_count();
  const std::size_t nch = inputs.size();
  const std::size_t n = grid.n_time;
  const double dz = grid.dz(link.length_km);
  const double slope = link.beta1_slope();

  std::vector<SignalGrid> state = inputs;
  std::vector<std::vector<double>> intensity(nch, std::vector<double>(n));
  std::vector<double> total(n);

  auto half_linear = [&](std::size_t c) {
    free_step(state[c].samples, grid, link.beta2, 0.5 * dz,
              slope * static_cast<double>(state[c].channel_index));
  };

  for (std::size_t step = 0; step < grid.n_zsteps; ++step) {
    parallel_for(nch, workers, half_linear);

    const double zmid = (static_cast<double>(step) + 0.5) * dz;
    const double g = link.gamma * std::exp(-link.alpha * zmid) * dz;
    parallel_for(nch, workers, [&](std::size_t c) {
      for (std::size_t j = 0; j < n; ++j)
        intensity[c][j] = std::norm(state[c].samples[j]);
    });
    std::fill(total.begin(), total.end(), 0.0);
    for (std::size_t c = 0; c < nch; ++c)
      for (std::size_t j = 0; j < n; ++j) total[j] += intensity[c][j];
    parallel_for(nch, workers, [&](std::size_t c) {
      for (std::size_t j = 0; j < n; ++j) {
        const double theta = g * (2.0 * total[j] - intensity[c][j]);
        state[c].samples[j] *= cdouble(std::cos(theta), std::sin(theta));
      }
    });

    parallel_for(nch, workers, half_linear);
  }

  const double amp = std::exp(-0.5 * link.alpha * link.length_km);
  if (amp != 1.0)
    for (auto& s : state)
      for (auto& v : s.samples) v *= amp;
  return state;
}

SignalGrid propagate_surrogate(const SignalGrid& x0,
                               const PotentialField& potential,
                               const LinkConfig& link) {
  check_same_grid(x0.grid, potential.grid, "propagate_surrogate");
  if (x0.samples.size() != x0.grid.n_time)
    throw std::invalid_argument(
        "propagate_surrogate: sample count does not match grid");
  const std::size_t m = potential.grid.n_zsteps;
  if (potential.values.size() != m)
    throw std::invalid_argument(
        "propagate_surrogate: potential slice count does not match its grid");
  for (const auto& slice : potential.values)
    if (slice.size() != x0.grid.n_time)
      throw std::invalid_argument(
          "propagate_surrogate: potential slice length does not match grid");

  const double dz = link.length_km / static_cast<double>(m);
  SignalGrid out = x0;
  for (std::size_t i = 0; i < m; ++i) {
    free_step(out.samples, out.grid, link.beta2, 0.5 * dz);
    const auto& nu = potential.values[i];
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
      const double theta = -nu[j] * dz;
      out.samples[j] *= cdouble(std::cos(theta), std::sin(theta));
    }
    free_step(out.samples, out.grid, link.beta2, 0.5 * dz);
  }
  return out;
}

cdouble free_propagator(double t, double t_prime, const LinkConfig& link) {
  const double b2l = link.beta2 * link.length_km;
  if (!(b2l > 0.0))
    throw std::invalid_argument(
        "free_propagator: beta2 * length_km must be positive");
  const double mag = 1.0 / std::sqrt(2.0 * kPi * b2l);
  const cdouble c = mag * cdouble(std::cos(kPi / 4.0), std::sin(kPi / 4.0));
  const double d = t - t_prime;
  const double phase = -d * d / (2.0 * b2l);
  return c * cdouble(std::cos(phase), std::sin(phase));
}

SignalGrid chirp_transform(const SignalGrid& x, const LinkConfig& link,
                           bool inverse) {
  if (x.samples.size() != x.grid.n_time)
    throw std::invalid_argument(
        "chirp_transform: sample count does not match grid");
  const double b2l = link.beta2 * link.length_km;
  if (b2l == 0.0) return x;
  SignalGrid out = x;
  const double sign = inverse ? -1.0 : 1.0;
  fft_forward(out.samples);
  const std::size_t n = out.samples.size();
  const double dt = x.grid.dt();
  for (std::size_t k = 0; k < n; ++k) {
    const double w = omega_at(k, n, dt);
    const double phase = sign * 0.5 * b2l * w * w;
    out.samples[k] *= cdouble(std::cos(phase), std::sin(phase));
  }
  fft_inverse(out.samples);
  return out;
}

}  // namespace wdmxpm
