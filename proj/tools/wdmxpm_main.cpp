#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wdmxpm/capacity.hpp"
#include "wdmxpm/channel.hpp"
#include "wdmxpm/config.hpp"
#include "wdmxpm/pathint.hpp"
#include "wdmxpm/propagator.hpp"
#include "wdmxpm/report_io.hpp"
#include "wdmxpm/rng.hpp"
#include "wdmxpm/version.hpp"
#include "wdmxpm/xpm_stats.hpp"

namespace fs = std::filesystem;
using namespace wdmxpm;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "master seed");
}

std::string channel_file_name(int k) {
  return "ch" + std::to_string(k) + ".txt";
}

// Reads every ch<k>.txt present in the directory, sorted by channel index.
std::vector<SignalGrid> read_input_channels(const std::string& dir) {
  std::vector<SignalGrid> signals;
  if (!fs::is_directory(dir))
    throw std::runtime_error("inputs path is not a directory: " + dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() < 7 || name.rfind("ch", 0) != 0 ||
        name.substr(name.size() - 4) != ".txt")
      continue;
    signals.push_back(read_signal_text(entry.path().string()));
    const std::string idx = name.substr(2, name.size() - 6);
    signals.back().channel_index = std::stoi(idx);
  }
  if (signals.empty())
    throw std::runtime_error("no ch<k>.txt signal files in " + dir);
  std::sort(signals.begin(), signals.end(),
            [](const SignalGrid& a, const SignalGrid& b) {
              return a.channel_index < b.channel_index;
            });
  return signals;
}

int cmd_propagate(const CommonArgs& common, const std::string& inputs_dir,
                  const std::string& mode, const std::string& potential_mode) {
  const Scenario sc = read_config_file(common.config_path);
  require_valid(sc.link, sc.grid);
  const ExperimentManifest manifest =
      make_manifest("propagate", common.config_path, common.seed,
                    common.out_dir);

  std::vector<SignalGrid> inputs = read_input_channels(inputs_dir);
  for (auto& s : inputs) {
    if (s.grid.n_time != sc.grid.n_time ||
        s.grid.t_window != sc.grid.t_window)
      throw std::runtime_error("input signal grid does not match config");
    s.grid = sc.grid;
  }

  std::vector<SignalGrid> outputs;
  if (mode == "coupled") {
    outputs = propagate_coupled(inputs, sc.link, sc.grid);
  } else if (mode == "surrogate") {
    const auto probe = std::find_if(
        inputs.begin(), inputs.end(),
        [](const SignalGrid& s) { return s.channel_index == 0; });
    if (probe == inputs.end())
      throw std::runtime_error("surrogate mode needs ch0.txt (the probe)");
    PotentialField pot;
    if (potential_mode == "zero") {
      pot.grid = sc.grid;
      pot.spectral_density = 0.0;
      pot.values.assign(sc.grid.n_zsteps,
                        std::vector<double>(sc.grid.n_time, 0.0));
    } else if (potential_mode == "sampled") {
      pot = sample_surrogate_potential(sc.grid, sigma_nu_sq(sc.link),
                                       derive_seed(common.seed, 0));
    } else {
      throw std::runtime_error("unknown --potential mode: " + potential_mode);
    }
    outputs.push_back(propagate_surrogate(*probe, pot, sc.link));
  } else {
    throw std::runtime_error("unknown --mode: " + mode);
  }

  fs::create_directories(common.out_dir);
  write_text_file(common.out_dir + "/config.txt",
                  manifest_header(manifest) +
                      serialize_config(sc.link, sc.grid));

  std::ostringstream audit;
  audit.precision(17);
  audit << "# wdmxpm energy audit\n" << manifest_header(manifest);
  audit << "# columns: channel energy_in energy_out ratio\n";
  double total_in = 0.0, total_out = 0.0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const SignalGrid* in = nullptr;
    for (const auto& s : inputs)
      if (s.channel_index == outputs[i].channel_index) in = &s;
    const double ei = in ? signal_energy(*in) : 0.0;
    const double eo = signal_energy(outputs[i]);
    total_in += ei;
    total_out += eo;
    audit << outputs[i].channel_index << " " << ei << " " << eo << " "
          << (ei > 0.0 ? eo / ei : 0.0) << "\n";
    write_signal_text(
        common.out_dir + "/" + channel_file_name(outputs[i].channel_index),
        outputs[i], &manifest);
  }
  audit << "# total_in: " << total_in << "\n";
  audit << "# total_out: " << total_out << "\n";
  audit << "# analytic_loss_factor: "
        << std::exp(-sc.link.alpha * sc.link.length_km) << "\n";
  write_text_file(common.out_dir + "/energy_audit.txt", audit.str());
  std::cout << "propagate: wrote " << outputs.size() << " channel file(s) to "
            << common.out_dir << "\n";
  return 0;
}

int cmd_validate_u(const CommonArgs& common, const std::string& t_interval,
                   std::size_t trials, double sigma_nu_override) {
  const Scenario sc = read_config_file(common.config_path);
  require_valid(sc.link, sc.grid);
  if (trials < 100) {
    std::cerr << "usage error: --trials must be >= 100\n";
    return 2;
  }
  const auto colon = t_interval.find(':');
  if (colon == std::string::npos)
    throw std::runtime_error(
        "--t-interval must be t_prime:t (two times, ps)");
  const double t_prime = std::stod(t_interval.substr(0, colon));
  const double t = std::stod(t_interval.substr(colon + 1));

  const ExperimentManifest manifest =
      make_manifest("validate-u", common.config_path, common.seed,
                    common.out_dir);

  UStatistics stats = validate_U_distribution(
      sc.link, sc.grid, t, t_prime, trials, common.seed,
      sigma_nu_override >= 0.0 ? std::optional<double>(sigma_nu_override)
                               : std::nullopt);

  write_text_file(common.out_dir + "/u_stats.txt",
                  manifest_header(manifest) + format_u_statistics(stats));

  const double ratio = stats.target_variance > 0.0
                           ? stats.sample_variance / stats.target_variance
                           : 1.0;
  const bool pass = ratio >= 0.95 && ratio <= 1.05;
  std::cout.precision(10);
  std::cout << "variance_ratio = " << ratio << " (target window [0.95, 1.05])"
            << "\n";
  std::cout << "gaussianity_pvalue = " << stats.gaussianity_pvalue << "\n";
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

std::vector<double> parse_sweep_values(const std::string& list) {
  std::vector<double> values;
  std::istringstream in(list);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    values.push_back(std::stod(tok));
  }
  if (values.empty()) throw std::runtime_error("empty sweep value list");
  return values;
}

int cmd_capacity(const CommonArgs& common, const std::string& sweep_spec,
                 double sigma_n_sq, bool with_mi, const std::string& units,
                 std::size_t trials) {
  const Scenario sc = read_config_file(common.config_path);
  require_valid(sc.link, sc.grid);
  const ExperimentManifest manifest =
      make_manifest("capacity", common.config_path, common.seed,
                    common.out_dir);

  std::string var = "channel_power";
  std::vector<double> values = {sc.link.channel_power};
  if (!sweep_spec.empty()) {
    const auto eq = sweep_spec.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--sweep must be VAR=v1,v2,...");
    var = sweep_spec.substr(0, eq);
    values = parse_sweep_values(sweep_spec.substr(eq + 1));
  }

  CapacityReport report = capacity_sweep(sc.link, var, values, sigma_n_sq);
  report.seed = common.seed;

  if (with_mi) {
    const std::size_t n_samples = std::max<std::size_t>(trials, 1000);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      LinkConfig pt = sc.link;
      if (var == "channel_power" || var == "P")
        pt.channel_power = report.rows[i].sweep_value;
      else if (var == "length_km" || var == "L")
        pt.length_km = report.rows[i].sweep_value;
      else if (var == "n_channels" || var == "N")
        pt.n_channels = static_cast<int>(report.rows[i].sweep_value);
      else if (var == "beta2")
        pt.beta2 = report.rows[i].sweep_value;
      else if (var == "channel_spacing" || var == "delta_nu")
        pt.channel_spacing = report.rows[i].sweep_value;
      else if (var == "group_velocity" || var == "nu_g")
        pt.group_velocity = report.rows[i].sweep_value;
      const double p = pt.channel_power;
      // Four-ring constellation scaled to average power P, uniform input.
      std::vector<cdouble> points;
      std::vector<double> probs(4, 0.25);
      double mean_pow = 0.0;
      for (int r = 1; r <= 4; ++r) mean_pow += 0.25 * r;
      for (int r = 1; r <= 4; ++r)
        points.emplace_back(std::sqrt(static_cast<double>(r) * p / mean_pow),
                            0.0);
      PhaseNoiseChannelSpec ch;
      ch.sigma_U_sq = sigma_U_sq_high_snr(pt, p);
      ch.sigma_N_sq = sigma_n_sq;
      ch.seed = derive_seed(common.seed, 1000 + i);
      const MiEstimate mi =
          mi_monte_carlo(points, probs, ch, n_samples, ch.seed, p);
      report.rows[i].mi_estimate = mi.mi_nats;
      report.rows[i].mi_stderr = mi.stderr_nats;
    }
  }

  write_text_file(common.out_dir + "/capacity_report.txt",
                  manifest_header(manifest) + format_capacity_report(report));

  const bool bits = units == "bits";
  std::cout.precision(10);
  for (const auto& row : report.rows) {
    char coeff[32];
    std::snprintf(coeff, sizeof(coeff), "%.3g", row.coefficient);
    const double bound =
        bits ? nats_to_bits(row.bound_entropy_nats) : row.bound_entropy_nats;
    std::cout << var << " = " << row.sweep_value << ": coefficient = " << coeff
              << ", bound = " << bound << " " << (bits ? "bits" : "nats")
              << "/symbol";
    if (with_mi)
      std::cout << ", mi = "
                << (bits ? nats_to_bits(row.mi_estimate) : row.mi_estimate)
                << " +- "
                << (bits ? nats_to_bits(row.mi_stderr) : row.mi_stderr);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WDM fiber XPM phase-noise simulation and capacity toolkit"};
  app.set_version_flag("--version", std::string("wdmxpm ") + kVersion);
  app.require_subcommand(1);

  CommonArgs prop_args, val_args, cap_args;

  auto* prop = app.add_subcommand(
      "propagate", "run the coupled or surrogate split-step solver");
  add_common(prop, prop_args);
  std::string inputs_dir, mode = "coupled", potential_mode = "sampled";
  prop->add_option("--inputs", inputs_dir,
                   "directory of ch<k>.txt input signal files")
      ->required();
  prop->add_option("--mode", mode, "coupled|surrogate")
      ->check(CLI::IsMember({"coupled", "surrogate"}));
  prop->add_option("--potential", potential_mode,
                   "surrogate potential source: sampled|zero");

  auto* val = app.add_subcommand(
      "validate-u", "Monte Carlo validation of the phase statistic U");
  add_common(val, val_args);
  std::string t_interval = "0:1";
  std::size_t trials = 10000;
  double sigma_nu_override = -1.0;
  val->add_option("--t-interval", t_interval,
                  "integration interval t_prime:t in ps");
  val->add_option("--trials", trials, "Monte Carlo trials (>= 100)");
  val->add_option("--sigma-nu", sigma_nu_override,
                  "override the config-derived potential strength");

  auto* cap = app.add_subcommand(
      "capacity", "evaluate the high-SNR capacity bound (and optional MI)");
  add_common(cap, cap_args);
  std::string sweep_spec, units = "nats";
  double sigma_n_sq = 1e-3;
  bool with_mi = false;
  std::size_t cap_trials = 2000;
  cap->add_option("--sweep", sweep_spec, "sweep spec VAR=v1,v2,...");
  cap->add_option("--sigma-n", sigma_n_sq, "additive noise variance (W)");
  cap->add_flag("--with-mi", with_mi, "estimate MI per sweep row");
  cap->add_option("--units", units, "nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  cap->add_option("--trials", cap_trials, "MI Monte Carlo samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prop->parsed())
      return cmd_propagate(prop_args, inputs_dir, mode, potential_mode);
    if (val->parsed())
      return cmd_validate_u(val_args, t_interval, trials, sigma_nu_override);
    if (cap->parsed())
      return cmd_capacity(cap_args, sweep_spec, sigma_n_sq, with_mi, units,
                          cap_trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
