#include "wdmxpm/capacity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wdmxpm/detail/parallel.hpp"
#include "wdmxpm/rng.hpp"
#include "wdmxpm/units.hpp"
#include "wdmxpm/xpm_stats.hpp"

namespace wdmxpm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

void require_link_valid(const LinkConfig& link, const char* what) {
  const auto errs = validate(link, SimGrid{});
  if (!errs.empty())
    throw std::invalid_argument(std::string(what) + ": " + errs.front());
}

double log_half_channels(const LinkConfig& link, bool exact_harmonic,
                         const char* what) {
  if (link.n_channels < 4)
    throw std::invalid_argument(
        std::string(what) +
        ": n_channels must be >= 4 (ln(N/2) vanishes at N = 2)");
  const std::size_t half = static_cast<std::size_t>(link.n_channels) / 2;
  return exact_harmonic ? harmonic_number(half)
                        : std::log(static_cast<double>(half));
}

// Unit-variance-per-dimension complex Gaussian density of total variance s2.
double gauss2(const cdouble& y, const cdouble& m, double s2) {
  return std::exp(-std::norm(y - m) / s2) / (kPi * s2);
}

}  // namespace

double gaussian_differential_entropy(double sigma_sq) {
  if (!(sigma_sq > 0.0))
    throw std::invalid_argument(
        "gaussian_differential_entropy: sigma_sq must be positive");
  return 0.5 * std::log(2.0 * kPi * kE * sigma_sq);
}

double capacity_bound_entropy_form(double p, double sigma_n_sq, double h_u) {
  if (!(p > 0.0))
    throw std::invalid_argument("capacity_bound_entropy_form: P must be positive");
  if (!(sigma_n_sq > 0.0))
    throw std::invalid_argument(
        "capacity_bound_entropy_form: sigma_N_sq must be positive");
  const double coeff = 2.0 * kPi * kPi * std::exp(-2.0 * h_u);
  return 0.5 * std::log1p(coeff * p / sigma_n_sq);
}

double param_form_coefficient(const LinkConfig& link, bool exact_harmonic) {
  require_link_valid(link, "param_form_coefficient");
  const double lg = log_half_channels(link, exact_harmonic,
                                      "param_form_coefficient");
  const double dnu = units::ghz_to_inv_ps(link.channel_spacing);
  const double l = link.length_km;
  return (kPi / kE) * (link.beta2 * dnu * dnu / (2.0 * lg)) *
         (link.group_velocity / (l * l * l));
}

double capacity_bound_param_form(const LinkConfig& link, double p,
                                 double sigma_n_sq, bool exact_harmonic) {
  if (!(p > 0.0))
    throw std::invalid_argument("capacity_bound_param_form: P must be positive");
  if (!(sigma_n_sq > 0.0))
    throw std::invalid_argument(
        "capacity_bound_param_form: sigma_N_sq must be positive");
  const double coeff = param_form_coefficient(link, exact_harmonic);
  return 0.5 * std::log1p(coeff / (p * sigma_n_sq));
}

double sigma_U_sq_high_snr(const LinkConfig& link, double p,
                           bool exact_harmonic) {
  require_link_valid(link, "sigma_U_sq_high_snr");
  if (!(p > 0.0))
    throw std::invalid_argument("sigma_U_sq_high_snr: P must be positive");
  const double lg =
      log_half_channels(link, exact_harmonic, "sigma_U_sq_high_snr");
  const double dnu = units::ghz_to_inv_ps(link.channel_spacing);
  const double l = link.length_km;
  return 2.0 * p * p * lg * l * l * l /
         (link.beta2 * dnu * dnu * link.group_velocity);
}

CapacityReport capacity_sweep(const LinkConfig& link,
                              const std::string& sweep_variable,
                              const std::vector<double>& grid,
                              double sigma_n_sq) {
  if (grid.empty())
    throw std::invalid_argument("capacity_sweep: empty sweep grid");
  if (!(sigma_n_sq > 0.0))
    throw std::invalid_argument("capacity_sweep: sigma_N_sq must be positive");

  CapacityReport report;
  report.sweep_variable = sweep_variable;
  report.sigma_n_sq = sigma_n_sq;
  report.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    LinkConfig pt = link;
    const double v = grid[i];
    if (sweep_variable == "channel_power" || sweep_variable == "P") {
      pt.channel_power = v;
    } else if (sweep_variable == "length_km" || sweep_variable == "L") {
      pt.length_km = v;
    } else if (sweep_variable == "n_channels" || sweep_variable == "N") {
      if (v != std::floor(v))
        throw std::invalid_argument("capacity_sweep: point " +
                                    std::to_string(i) +
                                    ": n_channels must be an integer");
      pt.n_channels = static_cast<int>(v);
    } else if (sweep_variable == "beta2") {
      pt.beta2 = v;
    } else if (sweep_variable == "channel_spacing" ||
               sweep_variable == "delta_nu") {
      pt.channel_spacing = v;
    } else if (sweep_variable == "group_velocity" || sweep_variable == "nu_g") {
      pt.group_velocity = v;
    } else {
      throw std::invalid_argument("capacity_sweep: unknown sweep variable: " +
                                  sweep_variable);
    }
    try {
      require_link_valid(pt, "capacity_sweep");
      const double p = pt.channel_power;
      CapacityRow row;
      row.sweep_value = v;
      row.coefficient = param_form_coefficient(pt);
      row.bound_param_nats = capacity_bound_param_form(pt, p, sigma_n_sq);
      const double h_u =
          gaussian_differential_entropy(sigma_U_sq_high_snr(pt, p));
      row.bound_entropy_nats =
          capacity_bound_entropy_form(p, sigma_n_sq, h_u);
      report.rows.push_back(row);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("capacity_sweep: point " + std::to_string(i) +
                                  " invalid: " + e.what());
    }
  }
  return report;
}

namespace {

// p(y | x) for the discrete channel: the phase draw is integrated out
// numerically. Simpson panels are doubled until 1e-6 relative stability.
class ConditionalDensity {
 public:
  ConditionalDensity(double sigma_u_sq, double sigma_n_sq)
      : su_(std::sqrt(sigma_u_sq)), sn2_(sigma_n_sq) {
    if (su_ > 0.0) {
      // Integrate over +-6 sigma, or over one wrapped period when the
      // phase spread covers the circle.
      wrap_ = 6.0 * su_ > kPi;
      half_width_ = wrap_ ? kPi : 6.0 * su_;
      n_wrap_ = wrap_ ? static_cast<int>(std::ceil(6.0 * su_ / (2.0 * kPi)))
                      : 0;
    }
  }

  double operator()(const cdouble& y, const cdouble& x) const {
    if (su_ == 0.0) return gauss2(y, x, sn2_);
    double prev = 0.0;
    for (std::size_t panels = 64; panels <= 16384; panels *= 2) {
      const double cur = simpson(y, x, panels);
      if (panels > 64 &&
          std::abs(cur - prev) <= 1e-6 * std::max(std::abs(cur), 1e-300))
        return std::max(cur, 1e-300);
      prev = cur;
    }
    return std::max(prev, 1e-300);
  }

 private:
  double phase_density(double u) const {
    if (!wrap_) {
      const double z = u / su_;
      return std::exp(-0.5 * z * z) / (su_ * std::sqrt(2.0 * kPi));
    }
    double acc = 0.0;
    for (int k = -n_wrap_; k <= n_wrap_; ++k) {
      const double z = (u + 2.0 * kPi * k) / su_;
      acc += std::exp(-0.5 * z * z);
    }
    return acc / (su_ * std::sqrt(2.0 * kPi));
  }

  double simpson(const cdouble& y, const cdouble& x, std::size_t panels) const {
    const double a = -half_width_;
    const double h = 2.0 * half_width_ / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t j = 0; j <= panels; ++j) {
      const double u = a + h * static_cast<double>(j);
      const double w = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      const cdouble m = x * cdouble(std::cos(u), -std::sin(u));
      acc += w * phase_density(u) * gauss2(y, m, sn2_);
    }
    return acc * h / 3.0;
  }

  double su_;
  double sn2_;
  bool wrap_ = false;
  double half_width_ = 0.0;
  int n_wrap_ = 0;
};

}  // namespace

MiEstimate mi_monte_carlo(const std::vector<cdouble>& constellation,
                          const std::vector<double>& probabilities,
                          const PhaseNoiseChannelSpec& spec,
                          std::size_t n_samples, std::uint64_t seed,
                          double max_power) {
  if (n_samples < 1000)
    throw std::invalid_argument("mi_monte_carlo: need n_samples >= 1000");
  if (constellation.empty() ||
      constellation.size() != probabilities.size())
    throw std::invalid_argument(
        "mi_monte_carlo: constellation and probabilities sizes differ");
  double psum = 0.0, pw = 0.0;
  for (std::size_t s = 0; s < probabilities.size(); ++s) {
    if (probabilities[s] < 0.0)
      throw std::invalid_argument("mi_monte_carlo: negative probability");
    psum += probabilities[s];
    pw += probabilities[s] * std::norm(constellation[s]);
  }
  if (std::abs(psum - 1.0) > 1e-9)
    throw std::invalid_argument("mi_monte_carlo: probabilities must sum to 1");
  if (std::isfinite(max_power) && pw > max_power * (1.0 + 1e-12))
    throw std::invalid_argument("mi_monte_carlo: power constraint violated");
  if (!(spec.sigma_N_sq > 0.0))
    throw std::invalid_argument("mi_monte_carlo: sigma_N_sq must be positive");
  if (spec.sigma_U_sq < 0.0)
    throw std::invalid_argument("mi_monte_carlo: sigma_U_sq must be >= 0");

  // Cumulative symbol distribution for inverse-CDF sampling.
  std::vector<double> cdf(probabilities.size());
  double run = 0.0;
  for (std::size_t s = 0; s < probabilities.size(); ++s) {
    run += probabilities[s];
    cdf[s] = run;
  }
  cdf.back() = 1.0;

  GaussianRng pick_rng(derive_seed(seed, 2));
  GaussianRng phase_rng(derive_seed(seed, 0));
  GaussianRng noise_rng(derive_seed(seed, 1));
  const double su = std::sqrt(spec.sigma_U_sq);
  const double sn = std::sqrt(0.5 * spec.sigma_N_sq);

  std::vector<std::size_t> sym(n_samples);
  std::vector<cdouble> y(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double r = pick_rng.uniform();
    std::size_t s = 0;
    while (s + 1 < cdf.size() && r >= cdf[s]) ++s;
    sym[i] = s;
    const double u = su * phase_rng.normal();
    y[i] = constellation[s] * cdouble(std::cos(u), -std::sin(u)) +
           cdouble(sn * noise_rng.normal(), sn * noise_rng.normal());
  }

  const ConditionalDensity density(spec.sigma_U_sq, spec.sigma_N_sq);
  std::vector<double> info(n_samples);
  detail::parallel_for(n_samples, detail::env_worker_count(), [&](std::size_t i) {
    const double p_cond = density(y[i], constellation[sym[i]]);
    double p_marg = 0.0;
    for (std::size_t s = 0; s < constellation.size(); ++s)
      p_marg += probabilities[s] * density(y[i], constellation[s]);
    info[i] = std::log(p_cond) - std::log(p_marg);
  });

  double mean = 0.0;
  for (double v : info) mean += v;
  mean /= static_cast<double>(n_samples);
  double var = 0.0;
  for (double v : info) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n_samples);

  MiEstimate est;
  est.mi_nats = mean;
  est.stderr_nats = std::sqrt(var / static_cast<double>(n_samples));
  est.n_samples = n_samples;
  return est;
}

std::string format_capacity_report(const CapacityReport& report) {
  std::ostringstream os;
  os.precision(17);
  double max_diff = 0.0;
  for (const auto& r : report.rows)
    max_diff = std::max(
        max_diff, std::abs(r.bound_entropy_nats - r.bound_param_nats));
  os << "# capacity report (high-SNR asymptotic bound; o(1) term omitted)\n";
  os << "# sweep_variable: " << report.sweep_variable << "\n";
  os << "# sigma_n_sq: " << report.sigma_n_sq << "\n";
  os << "# max_form_difference_nats: " << max_diff << "\n";
  os << "# sweep_value bound_nats bound_bits coefficient mi_estimate"
     << " mi_stderr seed\n";
  for (const auto& r : report.rows) {
    os << r.sweep_value << " " << r.bound_entropy_nats << " "
       << nats_to_bits(r.bound_entropy_nats) << " " << r.coefficient << " "
       << r.mi_estimate << " " << r.mi_stderr << " " << report.seed << "\n";
  }
  return os.str();
}

}  // namespace wdmxpm
