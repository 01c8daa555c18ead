#include <cmath>

#include "kgtx/core.hpp"

namespace kgtx {

Complex branch_sqrt(Complex z, double cut) {
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  double theta = std::arg(z);
  while (theta < cut) theta += 2.0 * kPi;
  while (theta >= cut + 2.0 * kPi) theta -= 2.0 * kPi;
  return std::polar(std::sqrt(r), 0.5 * theta);
}

}  // namespace kgtx
