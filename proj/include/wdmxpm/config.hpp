#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wdmxpm/units.hpp"

namespace wdmxpm {

// Physical description of one WDM span.
//
// Channel indexing: the probe sits at index 0; interferers occupy
// -n_channels/2 .. n_channels/2 excluding 0, so n_channels must be even.
struct LinkConfig {
  double beta2 = 1.0;            // group velocity dispersion, ps^2/km, > 0
  double gamma = 0.0;            // Kerr coefficient, 1/(W km), >= 0
  double alpha = 0.0;            // attenuation, 1/km, >= 0
  double length_km = 1.0;        // span length, km, > 0
  double group_velocity = 1.0;   // km/s, > 0
  int n_channels = 2;            // number of interfering channels, even, >= 2
  double channel_spacing = 1.0;  // GHz, > 0
  double channel_power = 1.0;    // per-channel average power, W, > 0

  // Walk-off slope in ps/km per channel index: channel k accumulates group
  // delay k * beta1_slope() * z relative to the probe.
  double beta1_slope() const {
    return units::ghz_to_angular_inv_ps(channel_spacing) * beta2;
  }
};

// Discretization of the retarded-time window and the span.
struct SimGrid {
  double t_window = 1.0;     // ps, > 0
  std::size_t n_time = 8;    // samples, power of two, >= 8
  std::size_t n_zsteps = 1;  // z slices, >= 1

  double dt() const { return t_window / static_cast<double>(n_time); }
  double dz(double length_km) const {
    return length_km / static_cast<double>(n_zsteps);
  }
  // Centered lattice: t_j = (j - n_time/2) * dt.
  double time_at(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(n_time) / 2.0) * dt();
  }
};

// Returns one message per violated invariant, each naming the offending
// field; empty means the pair is usable.
std::vector<std::string> validate(const LinkConfig& link, const SimGrid& grid);

// Throws std::invalid_argument listing all violations.
void require_valid(const LinkConfig& link, const SimGrid& grid);

// Flat key = value text, one pair per line, '#' comments allowed. All keys
// are required; unknown keys are an error. Values are printed with enough
// digits that a round-trip is exact to 1e-15 relative.
struct Scenario {
  LinkConfig link;
  SimGrid grid;
};

std::string serialize_config(const LinkConfig& link, const SimGrid& grid);
Scenario parse_config(const std::string& text);
void write_config_file(const std::string& path, const LinkConfig& link,
                       const SimGrid& grid);
Scenario read_config_file(const std::string& path);

}  // namespace wdmxpm
