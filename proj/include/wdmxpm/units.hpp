#pragma once

#include <numbers>

// Base units used throughout: time ps, distance km, power W, frequency
// offsets GHz, dispersion ps^2/km, nonlinearity 1/(W km), loss 1/km,
// potentials 1/km, group velocity km/s. All angular frequencies are 1/ps.
namespace wdmxpm::units {

inline constexpr double kPi = std::numbers::pi;

// Cycles per ns (GHz) to cycles per ps.
inline constexpr double ghz_to_inv_ps(double f_ghz) { return f_ghz * 1e-3; }
inline constexpr double inv_ps_to_ghz(double f_inv_ps) { return f_inv_ps * 1e3; }

// GHz to angular frequency in rad/ps and back.
inline constexpr double ghz_to_angular_inv_ps(double f_ghz) {
  return 2.0 * kPi * ghz_to_inv_ps(f_ghz);
}
inline constexpr double angular_inv_ps_to_ghz(double w_inv_ps) {
  return inv_ps_to_ghz(w_inv_ps / (2.0 * kPi));
}

inline constexpr double km_per_s_to_km_per_ps(double v) { return v * 1e-12; }
inline constexpr double km_per_ps_to_km_per_s(double v) { return v * 1e12; }

}  // namespace wdmxpm::units
