#include "wdmxpm/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wdmxpm/rng.hpp"

namespace wdmxpm {

namespace {

void check_spec(const PhaseNoiseChannelSpec& spec) {
  if (spec.sigma_U_sq < 0.0)
    throw std::invalid_argument("channel: sigma_U_sq must be nonnegative");
  if (spec.sigma_N_sq < 0.0)
    throw std::invalid_argument("channel: sigma_N_sq must be nonnegative");
}

}  // namespace

double sigma_U_sq_lumped(double sigma_nu_sq_value, const LinkConfig& link) {
  if (sigma_nu_sq_value < 0.0)
    throw std::invalid_argument("sigma_U_sq_lumped: sigma_nu_sq must be >= 0");
  const auto errs = validate(link, SimGrid{});
  if (!errs.empty())
    throw std::invalid_argument("sigma_U_sq_lumped: " + errs.front());
  const double l = link.length_km;
  return sigma_nu_sq_value * (l / link.group_velocity) * l * l;
}

SignalGrid apply_lumped_channel(const SignalGrid& x_tilde,
                                const PhaseNoiseChannelSpec& spec) {
  check_spec(spec);
  if (x_tilde.samples.size() != x_tilde.grid.n_time)
    throw std::invalid_argument(
        "apply_lumped_channel: sample count does not match grid");
  SignalGrid y = x_tilde;
  GaussianRng phase_rng(derive_seed(spec.seed, 0));
  GaussianRng noise_rng(derive_seed(spec.seed, 1));
  const double u = std::sqrt(spec.sigma_U_sq) * phase_rng.normal();
  const cdouble rot(std::cos(u), -std::sin(u));
  const double sn = std::sqrt(0.5 * spec.sigma_N_sq);
  for (auto& v : y.samples) {
    v *= rot;
    if (sn > 0.0) v += cdouble(sn * noise_rng.normal(), sn * noise_rng.normal());
  }
  return y;
}

std::vector<cdouble> discrete_channel(const std::vector<cdouble>& x_seq,
                                      const PhaseNoiseChannelSpec& spec,
                                      double max_power) {
  check_spec(spec);
  if (std::isfinite(max_power) && !x_seq.empty()) {
    double acc = 0.0;
    for (const auto& v : x_seq) acc += std::norm(v);
    if (acc / static_cast<double>(x_seq.size()) >
        max_power * (1.0 + 1e-12))
      throw std::invalid_argument("discrete_channel: power constraint violated");
  }
  GaussianRng phase_rng(derive_seed(spec.seed, 0));
  GaussianRng noise_rng(derive_seed(spec.seed, 1));
  const double su = std::sqrt(spec.sigma_U_sq);
  const double sn = std::sqrt(0.5 * spec.sigma_N_sq);
  std::vector<cdouble> y(x_seq.size());
  for (std::size_t k = 0; k < x_seq.size(); ++k) {
    const double u = su * phase_rng.normal();
    cdouble v = x_seq[k] * cdouble(std::cos(u), -std::sin(u));
    if (sn > 0.0) v += cdouble(sn * noise_rng.normal(), sn * noise_rng.normal());
    y[k] = v;
  }
  return y;
}

std::string format_symbols(const std::vector<cdouble>& in,
                           const std::vector<cdouble>& out) {
  if (in.size() != out.size())
    throw std::invalid_argument("format_symbols: length mismatch");
  std::ostringstream os;
  os.precision(17);
  os << "# index Re_in Im_in Re_out Im_out\n";
  for (std::size_t k = 0; k < in.size(); ++k)
    os << k << " " << in[k].real() << " " << in[k].imag() << " "
       << out[k].real() << " " << out[k].imag() << "\n";
  return os.str();
}

}  // namespace wdmxpm
