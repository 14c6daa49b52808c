#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "wdmxpm/capacity.hpp"
#include "wdmxpm/rng.hpp"

using namespace wdmxpm;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

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

// Exact-channel reference: MI of QPSK over the pure AWGN channel by direct
// two-dimensional integration, I = h(Y) - ln(pi e sigma_n_sq).
double awgn_qpsk_mi(const std::vector<cdouble>& xs, double sigma_n_sq) {
  const double lim = 4.0, h = 0.02;
  const std::size_t n = static_cast<std::size_t>(2.0 * lim / h) + 1;
  double h_y = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const cdouble y(-lim + h * static_cast<double>(ix),
                      -lim + h * static_cast<double>(iy));
      double p = 0.0;
      for (const auto& x : xs)
        p += 0.25 * std::exp(-std::norm(y - x) / sigma_n_sq) /
             (kPi * sigma_n_sq);
      if (p > 0.0) h_y -= p * std::log(p) * h * h;
    }
  }
  return h_y - std::log(kPi * kE * sigma_n_sq);
}

}  // namespace

TEST_SUITE("capacity") {

TEST_CASE("gaussian differential entropy") {
  CHECK(gaussian_differential_entropy(1.0 / (2.0 * kPi * kE)) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(gaussian_differential_entropy(1.0) ==
        doctest::Approx(1.4189385332046727).epsilon(1e-15));
  CHECK(gaussian_differential_entropy(4.0) -
            gaussian_differential_entropy(1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_differential_entropy(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_differential_entropy(-1.0), std::invalid_argument);
}

TEST_CASE("entropy form reduces to half log one plus SNR at h(pi/e)") {
  // sigma_U_sq = pi/e makes 2 pi^2 e^{-2 h_u} equal 1.
  const double h_u = gaussian_differential_entropy(kPi / kE);
  CHECK(capacity_bound_entropy_form(3.0, 0.1, h_u) ==
        doctest::Approx(0.5 * std::log1p(30.0)).epsilon(1e-14));
  CHECK(capacity_bound_entropy_form(1e-300, 1.0, h_u) < 1e-12);
  CHECK(capacity_bound_entropy_form(1.0, 1.0, 50.0) < 1e-12);
  CHECK_THROWS_AS(capacity_bound_entropy_form(0.0, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_bound_entropy_form(1.0, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("parametric coefficient at the nominal operating point") {
  const double c = param_form_coefficient(nominal_link());
  CHECK(c == doctest::Approx(0.011817183571643491).epsilon(1e-12));
  // Three significant figures: 0.0118.
  CHECK(std::round(c * 1e4) == 118.0);
  // Exact-harmonic variant replaces ln 50 by H_50.
  const double c_exact = param_form_coefficient(nominal_link(), true);
  const double expected = (kPi / kE) * (20.0 * 0.05 * 0.05 /
                                        (2.0 * 4.499205338329423)) *
                          (2e5 / (50.0 * 50.0 * 50.0));
  CHECK(c_exact == doctest::Approx(expected).epsilon(1e-12));
  CHECK(c_exact < c);
}

TEST_CASE("parametric coefficient rejects degenerate links") {
  LinkConfig two = nominal_link();
  two.n_channels = 2;
  CHECK_THROWS_AS(param_form_coefficient(two), std::invalid_argument);
  LinkConfig odd = nominal_link();
  odd.n_channels = 99;
  CHECK_THROWS_AS(param_form_coefficient(odd), std::invalid_argument);
  LinkConfig flat = nominal_link();
  flat.beta2 = 0.0;
  CHECK_THROWS_AS(param_form_coefficient(flat), std::invalid_argument);
}

TEST_CASE("high-SNR phase variance at the nominal operating point") {
  // 2 P^2 ln 50 L^3 / (beta2 dnu^2 nu_g) with dnu = 0.05 1/ps.
  const double expected =
      2.0 * std::log(50.0) * 125000.0 / (20.0 * 0.0025 * 2e5);
  CHECK(sigma_U_sq_high_snr(nominal_link(), 1.0) ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(sigma_U_sq_high_snr(nominal_link(), 0.0),
                  std::invalid_argument);
}

TEST_CASE("entropy and parametric forms agree across random links") {
  GaussianRng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    LinkConfig link;
    link.beta2 = 1.0 + 29.0 * rng.uniform();
    link.channel_spacing = 10.0 + 90.0 * rng.uniform();
    link.group_velocity = 1e4 * (1.0 + 99.0 * rng.uniform());
    link.length_km = 10.0 + 90.0 * rng.uniform();
    link.n_channels = 2 * (2 + static_cast<int>(99.0 * rng.uniform()));
    link.channel_power = 0.01 + 9.99 * rng.uniform();
    const double p = link.channel_power;
    const double sigma_n_sq = std::pow(10.0, -6.0 + 6.0 * rng.uniform());
    const double via_param = capacity_bound_param_form(link, p, sigma_n_sq);
    const double h_u =
        gaussian_differential_entropy(sigma_U_sq_high_snr(link, p));
    const double via_entropy =
        capacity_bound_entropy_form(p, sigma_n_sq, h_u);
    CHECK(std::abs(via_entropy - via_param) <= 1e-12 * std::abs(via_param));
  }
}

TEST_CASE("bound moves the right way along each parameter") {
  const LinkConfig base = nominal_link();
  const double sn = 1e-3;
  auto bounds = [&](const std::string& var, std::vector<double> pts) {
    const auto rep = capacity_sweep(base, var, pts, sn);
    std::vector<double> out;
    for (const auto& r : rep.rows) out.push_back(r.bound_entropy_nats);
    return out;
  };
  auto decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] < v[i - 1])) return false;
    return true;
  };
  CHECK(decreasing(bounds("channel_power", {0.5, 1.0, 2.0, 4.0})));
  CHECK(decreasing(bounds("length_km", {25.0, 50.0, 100.0})));
  CHECK(decreasing(bounds("n_channels", {10.0, 100.0, 1000.0})));
  auto increasing = [&](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) return false;
    return true;
  };
  CHECK(increasing(bounds("beta2", {5.0, 20.0, 80.0})));
  CHECK(increasing(bounds("channel_spacing", {25.0, 50.0, 100.0})));
  CHECK(increasing(bounds("group_velocity", {1e5, 2e5, 4e5})));
}

TEST_CASE("sweep rows carry both forms in agreement") {
  const auto rep =
      capacity_sweep(nominal_link(), "P", {0.5, 1.0, 2.0}, 1e-3);
  CHECK(rep.sweep_variable == "P");
  CHECK(rep.sigma_n_sq == 1e-3);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& r : rep.rows) {
    CHECK(std::abs(r.bound_entropy_nats - r.bound_param_nats) <=
          1e-12 * r.bound_param_nats);
    CHECK(std::isnan(r.mi_estimate));
  }
  CHECK(rep.rows[1].bound_param_nats ==
        capacity_bound_param_form(nominal_link(), 1.0, 1e-3));
  CHECK(rep.rows[1].coefficient ==
        param_form_coefficient(nominal_link()));
}

TEST_CASE("sweep failure modes") {
  CHECK_THROWS_WITH_AS(
      capacity_sweep(nominal_link(), "length_km", {50.0, -1.0}, 1e-3),
      "capacity_sweep: point 1 invalid: capacity_sweep: length_km must be "
      "positive",
      std::invalid_argument);
  CHECK_THROWS_AS(capacity_sweep(nominal_link(), "bogus", {1.0}, 1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_sweep(nominal_link(), "N", {10.5}, 1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_sweep(nominal_link(), "P", {}, 1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_sweep(nominal_link(), "P", {1.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("unit conversion to bits") {
  CHECK(nats_to_bits(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nats_to_bits(1.0) ==
        doctest::Approx(1.4426950408889634).epsilon(1e-15));
}

TEST_CASE("report format carries the metadata and the column header") {
  auto rep = capacity_sweep(nominal_link(), "channel_power", {1.0}, 1e-3);
  rep.seed = 11;
  const std::string text = format_capacity_report(rep);
  CHECK(text.find("# capacity report (high-SNR asymptotic bound; o(1) term "
                  "omitted)\n") != std::string::npos);
  CHECK(text.find("# sweep_variable: channel_power\n") != std::string::npos);
  CHECK(text.find("# sigma_n_sq: 0.001") != std::string::npos);
  CHECK(text.find("# max_form_difference_nats: ") != std::string::npos);
  CHECK(text.find("# sweep_value bound_nats bound_bits coefficient "
                  "mi_estimate mi_stderr seed\n") != std::string::npos);
  CHECK(text.find(" 11\n") != std::string::npos);
}

TEST_CASE("mutual information estimator rejects bad inputs") {
  const std::vector<cdouble> xs = {cdouble(1.0, 0.0), cdouble(-1.0, 0.0)};
  const std::vector<double> ps = {0.5, 0.5};
  PhaseNoiseChannelSpec spec;
  spec.sigma_N_sq = 0.1;
  CHECK_THROWS_AS(mi_monte_carlo(xs, ps, spec, 999, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(mi_monte_carlo(xs, {1.0}, spec, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(mi_monte_carlo(xs, {0.4, 0.4}, spec, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(mi_monte_carlo(xs, {1.5, -0.5}, spec, 1000, 1),
                  std::invalid_argument);
  PhaseNoiseChannelSpec noiseless;
  CHECK_THROWS_AS(mi_monte_carlo(xs, ps, noiseless, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(mi_monte_carlo(xs, ps, spec, 1000, 1, 0.5),
                  std::invalid_argument);  // average power 1 > 0.5
}

TEST_CASE("single-symbol constellation carries no information") {
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = 0.3;
  spec.sigma_N_sq = 0.2;
  const auto est =
      mi_monte_carlo({cdouble(1.0, 0.0)}, {1.0}, spec, 1000, 8);
  CHECK(est.mi_nats == 0.0);
  CHECK(est.stderr_nats == 0.0);
  CHECK(est.n_samples == 1000);
}

TEST_CASE("estimator matches direct integration on the AWGN channel") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::vector<cdouble> xs = {
      cdouble(inv_sqrt2, inv_sqrt2), cdouble(-inv_sqrt2, inv_sqrt2),
      cdouble(-inv_sqrt2, -inv_sqrt2), cdouble(inv_sqrt2, -inv_sqrt2)};
  const std::vector<double> ps(4, 0.25);
  PhaseNoiseChannelSpec spec;
  spec.sigma_N_sq = 0.5;
  const auto est = mi_monte_carlo(xs, ps, spec, 20000, 515);
  const double oracle = awgn_qpsk_mi(xs, 0.5);
  CHECK(std::abs(est.mi_nats - oracle) < 3.0 * est.stderr_nats + 0.01);
  CHECK(est.stderr_nats > 0.0);
  CHECK(est.stderr_nats < 0.05);
}

TEST_CASE("saturated phase noise erases PSK but not ring information") {
  PhaseNoiseChannelSpec spec;
  spec.sigma_U_sq = 25.0;
  spec.sigma_N_sq = 0.05;
  spec.seed = 0;
  std::vector<cdouble> psk;
  std::vector<double> ps(8, 0.125);
  for (int k = 0; k < 8; ++k)
    psk.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / 8.0));
  const auto dead = mi_monte_carlo(psk, ps, spec, 1000, 99);
  CHECK(std::abs(dead.mi_nats) < 3.0 * dead.stderr_nats + 0.01);

  const std::vector<cdouble> rings = {cdouble(0.5, 0.0), cdouble(1.0, 0.0),
                                      cdouble(1.5, 0.0), cdouble(2.0, 0.0)};
  const std::vector<double> pr(4, 0.25);
  PhaseNoiseChannelSpec ring_spec;
  ring_spec.sigma_U_sq = 25.0;
  ring_spec.sigma_N_sq = 4e-3;
  const auto ring = mi_monte_carlo(rings, pr, ring_spec, 1000, 7);
  CHECK(ring.mi_nats > 1.2);
  CHECK(ring.mi_nats < std::log(4.0) + 3.0 * ring.stderr_nats + 0.01);

  // The ring estimate respects the entropy-form bound at its own parameters.
  const double avg_power = 0.25 * (0.25 + 1.0 + 2.25 + 4.0);
  const double bound = capacity_bound_entropy_form(
      avg_power, ring_spec.sigma_N_sq,
      gaussian_differential_entropy(ring_spec.sigma_U_sq));
  CHECK(ring.mi_nats <= bound + 3.0 * ring.stderr_nats);
}

}  // TEST_SUITE
