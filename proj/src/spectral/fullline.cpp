#include <cmath>
#include <sstream>

#include "kgtx/spectral.hpp"

namespace kgtx {

namespace {

void check_window(const GridFunction& f, double t, double a, double c) {
  if (!(c > 0.0)) throw ConfigError("full-line propagator needs c > 0");
  if (!(a >= 0.0)) throw ConfigError("full-line propagator needs a >= 0");
  if (!(t >= 0.0)) throw ConfigError("full-line propagator needs t >= 0");
  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return;
  std::size_t lo = 0, hi = f.size() - 1;
  while (std::abs(f.values[lo]) <= 1e-12 * peak) ++lo;
  while (std::abs(f.values[hi]) <= 1e-12 * peak) --hi;
  const double room = std::min(f.x(lo) - f.x(0), f.x(f.size() - 1) - f.x(hi));
  if (!(room > c * t)) {
    std::ostringstream msg;
    msg << "sampling window too small: support is " << room << " from the edge, light cone needs "
        << c * t;
    throw WindowError(msg.str());
  }
}

}  // namespace

FullLineState kg_fullline_evolve(const GridFunction& f, double t, double a, double c) {
  if (f.size() == 0) throw WindowError("empty sampling window");
  check_window(f, t, a, c);
  const SampledSpectrum spec = fourier_forward(f);
  SampledSpectrum su = spec, sv = spec;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double w = spec.omega(j);
    const double om = std::sqrt(a + c * c * w * w);
    su.values[j] *= std::cos(om * t);
    sv.values[j] *= -om * std::sin(om * t);
  }
  return {fourier_inverse(su), fourier_inverse(sv)};
}

GridFunction kg_fullline_propagate(const GridFunction& f, double t, double a, double c) {
  return kg_fullline_evolve(f, t, a, c).u;
}

}  // namespace kgtx
