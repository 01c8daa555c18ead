#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kgtx/core.hpp"

namespace kgtx {

struct QuadOptions {
  int n_per_panel = 16;           // Gauss-Legendre points per sub-panel
  double max_panel_width = 1.0;   // breakpoint intervals are split to this width
  double tail_decay_power = 2.0;  // assumed |integrand| ~ omega^-p beyond omega_max
  /// Sub-panels touching a breakpoint use a polynomial map that clusters
  /// nodes there, which removes sqrt-type kinks and 1/sqrt endpoint
  /// singularities.
  bool grade_breakpoints = true;
};

/// Nodes and weights of a composite rule over [breakpoints.front(), omega_max].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lower = 0.0;
  double omega_max = 0.0;
  double last_panel_lower = 0.0;  // start of the sub-panel ending at omega_max
};

QuadRule panel_rule(std::span<const double> breakpoints, double omega_max,
                    const QuadOptions& opts = {});

struct QuadResult {
  Complex value;
  double tail_estimate = 0.0;  // bound on |int_{omega_max}^inf|
};

/// Composite quadrature split at every breakpoint. Throws QuadratureError
/// naming omega if the integrand is not finite there.
QuadResult quad_panels(const std::function<Complex(double)>& integrand,
                       std::span<const double> breakpoints, double omega_max,
                       const QuadOptions& opts = {});

/// Same, on a precomputed rule.
QuadResult quad_apply(const std::function<Complex(double)>& integrand, const QuadRule& rule,
                      double tail_decay_power = 2.0);

}  // namespace kgtx
