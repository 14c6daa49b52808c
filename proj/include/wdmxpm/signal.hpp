#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wdmxpm/config.hpp"

namespace wdmxpm {

using cdouble = std::complex<double>;

// One channel's complex envelope sampled on a SimGrid time lattice.
// Samples carry sqrt(W); |samples[j]|^2 is instantaneous power in W.
struct SignalGrid {
  std::vector<cdouble> samples;
  SimGrid grid;
  int channel_index = 0;
};

// Time-averaged power (1/n) sum |x_j|^2, in W.
double average_power(const SignalGrid& s);

// dt * sum |x_j|^2, in W ps. Conserved by lossless propagation.
double signal_energy(const SignalGrid& s);

}  // namespace wdmxpm
