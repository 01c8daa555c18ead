#include "kgtx/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace kgtx {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding, identical
// from run to run.
void fft_inplace(std::vector<Complex>& data, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int n = static_cast<int>(data.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

void check_even(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw WindowError("Fourier sampling needs an even number of points");
}

}  // namespace

GridFunction GridFunction::sample_real(double x0, double dx, const std::vector<double>& v) {
  GridFunction f{x0, dx, {}};
  f.values.assign(v.begin(), v.end());
  return f;
}

double SampledSpectrum::domega() const {
  return 2.0 * kPi / (static_cast<double>(values.size()) * dx);
}

double SampledSpectrum::omega(std::size_t j) const {
  return (static_cast<double>(j) - static_cast<double>(values.size() / 2)) * domega();
}

SampledSpectrum fourier_forward(const GridFunction& f) {
  const std::size_t n = f.size();
  check_even(n);
  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
  if (peak > 0.0 && edge > 1e-12 * peak)
    throw WindowError("sampling window too small: function does not vanish at the window edges");

  SampledSpectrum g{f.x0, f.dx, f.values};
  // (-1)^n shifts the DFT output so that index j holds omega_j = (j - N/2) domega.
  for (std::size_t i = 1; i < n; i += 2) g.values[i] = -g.values[i];
  fft_inplace(g.values, FFTW_FORWARD);
  for (std::size_t j = 0; j < n; ++j)
    g.values[j] *= f.dx * std::polar(1.0, -g.omega(j) * f.x0);
  return g;
}

GridFunction fourier_inverse(const SampledSpectrum& g) {
  const std::size_t n = g.size();
  check_even(n);
  GridFunction f{g.x0, g.dx, g.values};
  for (std::size_t j = 0; j < n; ++j) f.values[j] *= std::polar(1.0, g.omega(j) * g.x0);
  fft_inplace(f.values, FFTW_BACKWARD);
  const double scale = 1.0 / (static_cast<double>(n) * g.dx);
  for (std::size_t i = 0; i < n; ++i) f.values[i] *= (i % 2 ? -scale : scale);
  return f;
}

}  // namespace kgtx
