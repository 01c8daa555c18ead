#pragma once

#include <cstddef>
#include <vector>

#include "kgtx/core.hpp"

namespace kgtx {

/// Uniform samples f(x0 + n*dx), n = 0..N-1.
struct GridFunction {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t n) const { return x0 + static_cast<double>(n) * dx; }
  static GridFunction sample_real(double x0, double dx, const std::vector<double>& v);
};

/// Spectrum on omega_j = (j - N/2) * domega, j = 0..N-1, of a GridFunction
/// with the same x0, dx and N.
struct SampledSpectrum {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
  double domega() const;
  double omega(std::size_t j) const;
};

/// Ff(omega) = int f(x) exp(-i omega x) dx by the rectangle rule, which is
/// spectrally accurate for smooth compactly supported f. N must be even.
/// Throws WindowError if f does not vanish at the window edges.
SampledSpectrum fourier_forward(const GridFunction& f);

/// f(x) = (1/2pi) int g(omega) exp(i omega x) domega, exact inverse of
/// fourier_forward on the sampled grid.
GridFunction fourier_inverse(const SampledSpectrum& g);

}  // namespace kgtx
