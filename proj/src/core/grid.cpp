#include <algorithm>
#include <cmath>

#include "kgtx/core.hpp"

namespace kgtx {

BranchGrid::BranchGrid(double h, std::size_t n) : h_(h), n_(n) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing h must be positive");
  if (n < 3) throw ConfigError("a branch needs at least 3 points");
}

BranchGrid BranchGrid::covering(double h, double length) {
  if (!(h > 0.0)) throw ConfigError("grid spacing h must be positive");
  // Round with a small slack so that lengths that are exact multiples of h
  // do not pick up an extra cell from representation error.
  const double cells = std::ceil(length / h - 1e-9);
  return BranchGrid(h, std::max<std::size_t>(3, static_cast<std::size_t>(cells) + 1));
}

BranchField::BranchField(BranchGrid g) : grid(g), u1(g.n(), 0.0), u2(g.n(), 0.0) {}

double BranchField::max_abs() const {
  double m = 0.0;
  for (double v : u1) m = std::max(m, std::abs(v));
  for (double v : u2) m = std::max(m, std::abs(v));
  return m;
}

double BranchField::node_mismatch() const { return std::abs(u1[0] - u2[0]); }

double BranchField::flux_residual() const {
  const double h = grid.h();
  const double d1 = (-3.0 * u1[0] + 4.0 * u1[1] - u1[2]) / (2.0 * h);
  const double d2 = (-3.0 * u2[0] + 4.0 * u2[1] - u2[2]) / (2.0 * h);
  return d1 + d2;
}

}  // namespace kgtx
