#include "wdmxpm/pathint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wdmxpm/detail/parallel.hpp"
#include "wdmxpm/propagator.hpp"
#include "wdmxpm/rng.hpp"

namespace wdmxpm {

namespace {

std::size_t nearest_index(double t, const SimGrid& grid, const char* what) {
  const double j = t / grid.dt() + static_cast<double>(grid.n_time) / 2.0;
  const double r = std::round(j);
  if (r < 0.0 || r >= static_cast<double>(grid.n_time))
    throw std::invalid_argument(std::string(what) + ": time outside the grid");
  return static_cast<std::size_t>(r);
}

std::string potential_ref_of(const PotentialField& p) {
  std::ostringstream out;
  out << p.correlation_convention << " spectral_density=" << p.spectral_density
      << " n_zsteps=" << p.grid.n_zsteps;
  return out.str();
}

}  // namespace

GreenEvaluation green_discrete(double t, double t_prime,
                               const PotentialField& potential,
                               const LinkConfig& link, std::size_t m_steps) {
  if (m_steps < 1)
    throw std::invalid_argument("green_discrete: m_steps must be >= 1");
  if (!(link.beta2 * link.length_km > 0.0))
    throw std::invalid_argument(
        "green_discrete: beta2 * length_km must be positive");
  const SimGrid& g = potential.grid;
  const std::size_t j_in = nearest_index(t_prime, g, "green_discrete");
  const std::size_t j_out = nearest_index(t, g, "green_discrete");

  // Resample the potential in z so the cascade takes exactly m_steps slices.
  PotentialField pot;
  pot.grid = g;
  pot.grid.n_zsteps = m_steps;
  pot.correlation_convention = potential.correlation_convention;
  pot.spectral_density = potential.spectral_density;
  pot.values.resize(m_steps);
  const std::size_t npz = potential.values.size();
  if (npz == 0)
    throw std::invalid_argument("green_discrete: potential has no slices");
  for (std::size_t i = 0; i < m_steps; ++i) {
    const double frac = (static_cast<double>(i) + 0.5) /
                        static_cast<double>(m_steps);
    std::size_t src = static_cast<std::size_t>(frac * static_cast<double>(npz));
    src = std::min(src, npz - 1);
    pot.values[i] = potential.values[src];
  }

  SignalGrid delta;
  delta.grid = pot.grid;
  delta.channel_index = 0;
  delta.samples.assign(g.n_time, cdouble(0.0, 0.0));
  delta.samples[j_in] = cdouble(1.0 / g.dt(), 0.0);

  const SignalGrid out = propagate_surrogate(delta, pot, link);

  GreenEvaluation ev;
  ev.value = out.samples[j_out];
  ev.t = t;
  ev.t_prime = t_prime;
  ev.m_steps = m_steps;
  ev.potential_ref = potential_ref_of(potential);
  return ev;
}

cdouble compute_U(const PotentialField& potential, double t, double t_prime,
                  const LinkConfig& link, std::size_t alpha_steps,
                  std::size_t time_refine) {
  if (alpha_steps < 1)
    throw std::invalid_argument("compute_U: alpha_steps must be >= 1");
  if (time_refine < 1)
    throw std::invalid_argument("compute_U: time_refine must be >= 1");
  const double b2l = link.beta2 * link.length_km;
  if (!(b2l > 0.0))
    throw std::invalid_argument("compute_U: beta2 * length_km must be positive");
  const SimGrid& g = potential.grid;
  const std::size_t nz = potential.values.size();
  if (nz == 0 || nz != g.n_zsteps)
    throw std::invalid_argument("compute_U: potential slice count mismatch");

  const std::size_t j0 = nearest_index(t_prime, g, "compute_U");
  const std::size_t j1 = nearest_index(t, g, "compute_U");
  if (j1 < j0) throw std::invalid_argument("compute_U: t must be >= t_prime");
  if (j1 == j0) return cdouble(0.0, 0.0);

  const double dt = g.dt();
  const double ta0 = g.time_at(j0);
  const double h = dt / static_cast<double>(time_refine);
  const std::size_t n_seg = (j1 - j0) * time_refine;
  const double inv2 = 1.0 / (2.0 * b2l);
  const double tt = g.time_at(j1);

  cdouble acc(0.0, 0.0);
  for (std::size_t a = 0; a < alpha_steps; ++a) {
    const double alpha = (static_cast<double>(a) + 0.5) /
                         static_cast<double>(alpha_steps);
    const double z_alpha = (1.0 - alpha) * link.length_km;
    std::size_t slice = static_cast<std::size_t>(
        z_alpha / link.length_km * static_cast<double>(nz));
    slice = std::min(slice, nz - 1);
    const std::vector<double>& nu = potential.values[slice];

    cdouble line(0.0, 0.0);
    for (std::size_t p = 0; p <= n_seg; ++p) {
      const double ta = ta0 + static_cast<double>(p) * h;
      // nu at ta by linear interpolation between lattice samples.
      const double x = static_cast<double>(p) / static_cast<double>(time_refine);
      const std::size_t base = j0 + static_cast<std::size_t>(x);
      const double fr = x - std::floor(x);
      const double nu_ta = (fr == 0.0 || base + 1 >= g.n_time)
                               ? nu[std::min(base, g.n_time - 1)]
                               : (1.0 - fr) * nu[base] + fr * nu[base + 1];
      const double d1 = tt - ta;
      const double d2 = ta - ta0;
      const double phase = -inv2 * (d1 * d1 / alpha + d2 * d2 / (1.0 - alpha));
      const double w = (p == 0 || p == n_seg) ? 0.5 : 1.0;
      line += w * nu_ta * cdouble(std::cos(phase), std::sin(phase));
    }
    acc += line * h;
  }
  return acc / static_cast<double>(alpha_steps);
}

UStatistics validate_U_distribution(const LinkConfig& link, const SimGrid& grid,
                                    double t, double t_prime,
                                    std::size_t n_trials, std::uint64_t seed,
                                    std::optional<double> sigma_nu_sq_override) {
  require_valid(link, grid);
  if (n_trials < 100)
    throw std::invalid_argument(
        "validate_U_distribution: n_trials must be >= 100");
  if (!(t > t_prime))
    throw std::invalid_argument("validate_U_distribution: need t > t_prime");
  if (sigma_nu_sq_override && *sigma_nu_sq_override < 0.0)
    throw std::invalid_argument(
        "validate_U_distribution: sigma_nu_sq override must be >= 0");

  const double sv =
      sigma_nu_sq_override ? *sigma_nu_sq_override : sigma_nu_sq(link);

  // Single z-slice: U integrates the potential along one span traversal, so
  // the ensemble convention is one independent time profile per trial.
  SimGrid gslice = grid;
  gslice.n_zsteps = 1;

  std::vector<cdouble> u(n_trials);
  const int workers = detail::env_worker_count();
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PotentialField pot =
          sample_surrogate_potential(gslice, sv, derive_seed(seed, i));
      u[i] = compute_U(pot, t, t_prime, link);
    }
  };
  if (workers <= 1) {
    run_range(0, n_trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t nw = std::min<std::size_t>(workers, n_trials);
    const std::size_t chunk = (n_trials + nw - 1) / nw;
    for (std::size_t w = 0; w < nw; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(n_trials, b + chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
    for (auto& th : pool) th.join();
  }

  UStatistics s;
  s.n_trials = n_trials;
  s.t = t;
  s.t_prime = t_prime;
  s.seed = seed;
  s.target_variance = sv * (t - t_prime);

  cdouble mean(0.0, 0.0);
  for (const auto& v : u) mean += v;
  mean /= static_cast<double>(n_trials);
  double var = 0.0;
  for (const auto& v : u) var += std::norm(v - mean);
  var /= static_cast<double>(n_trials);
  s.sample_mean = mean;
  s.sample_variance = var;
  s.mean_stderr = std::sqrt(var / static_cast<double>(n_trials));

  if (sv == 0.0) {
    // Degenerate ensemble: every U is exactly 0; normality is vacuous.
    s.pvalue_real = s.pvalue_imag = s.gaussianity_pvalue = 1.0;
    return s;
  }

  std::vector<double> re(n_trials), im(n_trials);
  for (std::size_t i = 0; i < n_trials; ++i) {
    re[i] = u[i].real();
    im[i] = u[i].imag();
  }
  s.pvalue_real = normality_pvalue(re);
  s.pvalue_imag = normality_pvalue(im);
  s.gaussianity_pvalue = std::min(s.pvalue_real, s.pvalue_imag);
  return s;
}

cdouble green_resummed(double t, double t_prime, cdouble u_value,
                       const LinkConfig& link) {
  const cdouble exponent = cdouble(0.0, -link.length_km) * u_value;
  return free_propagator(t, t_prime, link) * std::exp(exponent);
}

double normality_pvalue(const std::vector<double>& samples) {
  const std::size_t n_sz = samples.size();
  if (n_sz < 20)
    throw std::invalid_argument("normality_pvalue: need at least 20 samples");
  const double n = static_cast<double>(n_sz);

  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 <= 0.0)
    throw std::invalid_argument("normality_pvalue: zero variance sample");

  // Skewness channel (D'Agostino 1970 transform to a standard normal).
  const double g1 = m3 / std::pow(m2, 1.5);
  const double y = g1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(std::log(std::sqrt(w2)));
  const double alpha = std::sqrt(2.0 / (w2 - 1.0));
  const double ya = y / alpha;
  const double z1 = delta * std::log(ya + std::sqrt(ya * ya + 1.0));

  // Kurtosis channel (Anscombe-Glynn 1983 transform).
  const double b2 = m4 / (m2 * m2);
  const double eb2 = 3.0 * (n - 1.0) / (n + 1.0);
  const double vb2 = 24.0 * n * (n - 2.0) * (n - 3.0) /
                     ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double x = (b2 - eb2) / std::sqrt(vb2);
  const double sb1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                     std::sqrt(6.0 * (n + 3.0) * (n + 5.0) /
                               (n * (n - 2.0) * (n - 3.0)));
  const double a = 6.0 + 8.0 / sb1 *
                             (2.0 / sb1 + std::sqrt(1.0 + 4.0 / (sb1 * sb1)));
  const double t1 = 1.0 - 2.0 / (9.0 * a);
  const double denom = 1.0 + x * std::sqrt(2.0 / (a - 4.0));
  const double t2 = std::cbrt((1.0 - 2.0 / a) / denom);
  const double z2 = (t1 - t2) / std::sqrt(2.0 / (9.0 * a));

  const double k2 = z1 * z1 + z2 * z2;
  // chi^2 survival with 2 dof.
  return std::exp(-0.5 * k2);
}

std::string format_u_statistics(const UStatistics& s) {
  std::ostringstream out;
  out.precision(17);
  out << "# u-statistics record\n";
  out << "t = " << s.t << "\n";
  out << "t_prime = " << s.t_prime << "\n";
  out << "n_trials = " << s.n_trials << "\n";
  out << "seed = " << s.seed << "\n";
  out << "mean_re = " << s.sample_mean.real() << "\n";
  out << "mean_im = " << s.sample_mean.imag() << "\n";
  out << "mean_stderr = " << s.mean_stderr << "\n";
  out << "variance = " << s.sample_variance << "\n";
  out << "target_variance = " << s.target_variance << "\n";
  out << "variance_ratio = "
      << (s.target_variance > 0.0 ? s.sample_variance / s.target_variance : 1.0)
      << "\n";
  out << "pvalue_real = " << s.pvalue_real << "\n";
  out << "pvalue_imag = " << s.pvalue_imag << "\n";
  out << "gaussianity_pvalue = " << s.gaussianity_pvalue << "\n";
  return out.str();
}

}  // namespace wdmxpm
