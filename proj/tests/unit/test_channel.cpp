#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "wdmxpm/channel.hpp"

using namespace wdmxpm;

namespace {

SignalGrid block_signal(std::size_t n, cdouble fill) {
  SignalGrid s;
  s.grid.t_window = static_cast<double>(n);
  s.grid.n_time = n;
  s.grid.n_zsteps = 1;
  s.channel_index = 0;
  s.samples.assign(n, fill);
  return s;
}

LinkConfig nominal_link() {
  LinkConfig link;
  link.beta2 = 20.0;
  link.channel_spacing = 50.0;
  link.group_velocity = 2e5;
  link.length_km = 50.0;
  link.n_channels = 100;
  link.channel_power = 1.0;
  return link;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("lumped phase variance closed form") {
  LinkConfig unit;
  CHECK(sigma_U_sq_lumped(0.0, unit) == 0.0);
  CHECK(sigma_U_sq_lumped(1.0, unit) == doctest::Approx(1.0).epsilon(1e-15));
  // (L / nu_g) L^2 = (50 / 2e5) * 2500 = 0.625 for the nominal link.
  CHECK(sigma_U_sq_lumped(1.0, nominal_link()) ==
        doctest::Approx(0.625).epsilon(1e-15));
  CHECK(sigma_U_sq_lumped(2.0, nominal_link()) ==
        doctest::Approx(1.25).epsilon(1e-15));
  CHECK_THROWS_AS(sigma_U_sq_lumped(-1.0, unit), std::invalid_argument);
  LinkConfig bad = nominal_link();
  bad.n_channels = 3;
  CHECK_THROWS_AS(sigma_U_sq_lumped(1.0, bad), std::invalid_argument);
}

TEST_CASE("noiseless lumped channel is the identity") {
  const SignalGrid x = block_signal(16, cdouble(0.3, -0.7));
  PhaseNoiseChannelSpec spec;
  spec.seed = 5;
  const SignalGrid y = apply_lumped_channel(x, spec);
  CHECK(y.samples == x.samples);
}

TEST_CASE("phase-only lumped channel preserves magnitudes") {
  const SignalGrid x = block_signal(64, cdouble(1.25, 0.5));
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = 0.8;
  spec.seed = 17;
  const SignalGrid y = apply_lumped_channel(x, spec);
  const double mag = std::abs(x.samples[0]);
  for (const auto& v : y.samples)
    CHECK(std::abs(v) == doctest::Approx(mag).epsilon(1e-14));
  // One block-wide draw: every sample sees the same rotation.
  const cdouble rot = y.samples[0] / x.samples[0];
  for (const auto& v : y.samples)
    CHECK(std::abs(v / x.samples[0] - rot) < 1e-14);
}

TEST_CASE("lumped channel is deterministic and seed-sensitive") {
  const SignalGrid x = block_signal(32, cdouble(1.0, 0.0));
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = 0.2;
  spec.sigma_N_sq = 0.1;
  spec.seed = 99;
  const SignalGrid a = apply_lumped_channel(x, spec);
  const SignalGrid b = apply_lumped_channel(x, spec);
  CHECK(a.samples == b.samples);
  spec.seed = 100;
  const SignalGrid c = apply_lumped_channel(x, spec);
  CHECK(a.samples != c.samples);
}

TEST_CASE("phase and noise streams are independent") {
  const SignalGrid x = block_signal(32, cdouble(0.9, 0.4));
  PhaseNoiseChannelSpec rot_only;
  rot_only.sigma_U_sq = 0.3;
  rot_only.seed = 7;
  PhaseNoiseChannelSpec with_noise = rot_only;
  with_noise.sigma_N_sq = 0.5;
  PhaseNoiseChannelSpec noise_only;
  noise_only.sigma_N_sq = 0.5;
  noise_only.seed = 7;

  const SignalGrid y_rot = apply_lumped_channel(x, rot_only);
  const SignalGrid y_full = apply_lumped_channel(x, with_noise);
  const SignalGrid pure_noise =
      apply_lumped_channel(block_signal(32, cdouble(0.0, 0.0)), noise_only);
  for (std::size_t k = 0; k < 32; ++k)
    CHECK(std::abs(y_full.samples[k] -
                   (y_rot.samples[k] + pure_noise.samples[k])) < 1e-15);
}

TEST_CASE("lumped channel rejects bad specs") {
  const SignalGrid x = block_signal(16, cdouble(1.0, 0.0));
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = -1.0;
  CHECK_THROWS_AS(apply_lumped_channel(x, spec), std::invalid_argument);
  spec.sigma_U_sq = 0.0;
  spec.sigma_N_sq = -1.0;
  CHECK_THROWS_AS(apply_lumped_channel(x, spec), std::invalid_argument);
  spec.sigma_N_sq = 0.0;
  SignalGrid short_sig = x;
  short_sig.samples.pop_back();
  CHECK_THROWS_AS(apply_lumped_channel(short_sig, spec),
                  std::invalid_argument);
}

TEST_CASE("noiseless discrete channel is the identity") {
  const std::vector<cdouble> x(10, cdouble(0.5, 0.5));
  PhaseNoiseChannelSpec spec;
  spec.seed = 3;
  CHECK(discrete_channel(x, spec) == x);
}

TEST_CASE("saturated phase noise scrambles the phase uniformly") {
  const std::size_t n = 100000;
  const std::vector<cdouble> x(n, cdouble(1.0, 0.0));
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = 1e4;
  spec.seed = 41;
  const auto y = discrete_channel(x, spec);
  cdouble mean(0.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(std::abs(y[k]) == doctest::Approx(1.0).epsilon(1e-14));
    mean += y[k];
  }
  mean /= static_cast<double>(n);
  CHECK(std::abs(mean) < 0.02);
}

TEST_CASE("conditional mean shrinks by exp(-sigma_U_sq / 2)") {
  const std::size_t n = 100000;
  const cdouble x0(2.0, 1.0);
  const std::vector<cdouble> x(n, x0);
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = 0.5;
  spec.sigma_N_sq = 0.01;
  spec.seed = 23;
  const auto y = discrete_channel(x, spec);
  cdouble mean(0.0, 0.0);
  for (const auto& v : y) mean += v;
  mean /= static_cast<double>(n);
  const cdouble expected = x0 * std::exp(-0.25);
  CHECK(std::abs(mean - expected) < 0.02 * std::abs(expected));
}

TEST_CASE("additive noise quadratures have the advertised variance") {
  const std::size_t n = 100000;
  const std::vector<cdouble> x(n, cdouble(0.0, 0.0));
  PhaseNoiseChannelSpec spec;
  spec.sigma_N_sq = 0.2;
  spec.seed = 57;
  const auto y = discrete_channel(x, spec);
  double mr = 0.0, mi = 0.0, vr = 0.0, vi = 0.0;
  for (const auto& v : y) {
    mr += v.real();
    mi += v.imag();
  }
  mr /= static_cast<double>(n);
  mi /= static_cast<double>(n);
  for (const auto& v : y) {
    vr += (v.real() - mr) * (v.real() - mr);
    vi += (v.imag() - mi) * (v.imag() - mi);
  }
  vr /= static_cast<double>(n);
  vi /= static_cast<double>(n);
  CHECK(std::abs(mr) < 0.01);
  CHECK(std::abs(mi) < 0.01);
  CHECK(std::abs(vr - 0.1) < 0.02 * 0.1);
  CHECK(std::abs(vi - 0.1) < 0.02 * 0.1);
}

TEST_CASE("phase deviations carry the advertised variance") {
  const std::size_t n = 100000;
  const std::vector<cdouble> x(n, cdouble(1.0, 1.0));
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = 0.05;
  spec.seed = 71;
  const auto y = discrete_channel(x, spec);
  double m = 0.0, v = 0.0;
  std::vector<double> dev(n);
  for (std::size_t k = 0; k < n; ++k) {
    dev[k] = std::arg(y[k] / x[k]);
    m += dev[k];
  }
  m /= static_cast<double>(n);
  for (double d : dev) v += (d - m) * (d - m);
  v /= static_cast<double>(n);
  CHECK(std::abs(m) < 0.005);
  CHECK(std::abs(v - 0.05) < 0.03 * 0.05);
}

TEST_CASE("discrete channel enforces the power constraint") {
  const std::vector<cdouble> x(8, cdouble(2.0, 0.0));  // average power 4
  PhaseNoiseChannelSpec spec;
  CHECK_THROWS_AS(discrete_channel(x, spec, 2.0), std::invalid_argument);
  CHECK_NOTHROW(discrete_channel(x, spec, 4.0));
  CHECK_NOTHROW(discrete_channel(x, spec));  // default: unconstrained
}

TEST_CASE("symbol table export") {
  const std::vector<cdouble> in = {cdouble(1.0, 0.0), cdouble(0.0, -1.0)};
  const std::vector<cdouble> out = {cdouble(0.5, 0.5), cdouble(-1.0, 0.25)};
  const std::string text = format_symbols(in, out);
  CHECK(text.rfind("# index Re_in Im_in Re_out Im_out\n", 0) == 0);
  CHECK(text.find("\n0 1 0 0.5 0.5\n") != std::string::npos);
  CHECK(text.find("\n1 0 -1 -1 0.25\n") != std::string::npos);
  CHECK_THROWS_AS(format_symbols(in, std::vector<cdouble>(3)),
                  std::invalid_argument);
}

}  // TEST_SUITE
