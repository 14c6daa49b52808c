#include "wdmxpm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace wdmxpm {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

// Plans are created once per size with FFTW_UNALIGNED so they can execute
// on any caller buffer via fftw_execute_dft. Plan creation is not thread
// safe in FFTW; execution of an existing plan is.
PlanPair get_plans(std::size_t n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<cdouble> scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair pp;
  pp.fwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  pp.bwd = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!pp.fwd || !pp.bwd) throw std::runtime_error("fftw plan creation failed");
  cache[n] = pp;
  return pp;
}

}  // namespace

void fft_forward(std::vector<cdouble>& x) {
  if (x.empty()) return;
  const PlanPair pp = get_plans(x.size());
  auto* p = reinterpret_cast<fftw_complex*>(x.data());
  fftw_execute_dft(pp.fwd, p, p);
}

void fft_inverse(std::vector<cdouble>& x) {
  if (x.empty()) return;
  const PlanPair pp = get_plans(x.size());
  auto* p = reinterpret_cast<fftw_complex*>(x.data());
  fftw_execute_dft(pp.bwd, p, p);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : x) v *= scale;
}

double omega_at(std::size_t k, std::size_t n, double dt) {
  const double kk = (k < n / 2) ? static_cast<double>(k)
                                : static_cast<double>(k) - static_cast<double>(n);
  return 2.0 * std::numbers::pi * kk / (static_cast<double>(n) * dt);
}

}  // namespace wdmxpm
