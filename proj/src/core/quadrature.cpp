#include "kgtx/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <limits>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

namespace kgtx {

namespace {

struct ReferenceRule {
  std::vector<double> s, w;  // on [0, 1]
};

ReferenceRule gauss_legendre(int n) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw QuadratureError("cannot build Gauss-Legendre table");
  ReferenceRule r;
  r.s.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &r.s[i], &r.w[i],
                                  table.get());
  }
  return r;
}

enum class Grading { none, left, right, both };

// Maps s in [0,1] to [lo,hi]; returns (omega, d omega / ds).
std::pair<double, double> map_node(double s, double lo, double hi, Grading g) {
  const double len = hi - lo;
  switch (g) {
    case Grading::left:
      return {lo + len * s * s, 2.0 * len * s};
    case Grading::right:
      return {hi - len * (1.0 - s) * (1.0 - s), 2.0 * len * (1.0 - s)};
    case Grading::both:
      return {lo + len * s * s * (3.0 - 2.0 * s), 6.0 * len * s * (1.0 - s)};
    case Grading::none:
    default:
      return {lo + len * s, len};
  }
}

}  // namespace

QuadRule panel_rule(std::span<const double> breakpoints, double omega_max,
                    const QuadOptions& opts) {
  if (breakpoints.empty()) throw QuadratureError("quadrature needs at least one breakpoint");
  if (opts.n_per_panel < 1) throw QuadratureError("n_per_panel must be positive");
  if (!(opts.max_panel_width > 0.0)) throw QuadratureError("max_panel_width must be positive");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
    throw QuadratureError("breakpoints must be sorted");
  if (!(omega_max > breakpoints.front()))
    throw QuadratureError("omega_max must exceed the first breakpoint");

  std::vector<double> edges;
  for (double b : breakpoints) {
    if (b >= omega_max) break;
    if (edges.empty() || b > edges.back()) edges.push_back(b);
  }
  const bool max_is_break =
      std::find(breakpoints.begin(), breakpoints.end(), omega_max) != breakpoints.end();
  edges.push_back(omega_max);

  const ReferenceRule ref = gauss_legendre(opts.n_per_panel);
  QuadRule rule;
  rule.lower = edges.front();
  rule.omega_max = omega_max;

  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p], hi = edges[p + 1];
    const bool hi_is_break = (p + 2 < edges.size()) || max_is_break;
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / opts.max_panel_width)));
    const double width = (hi - lo) / static_cast<double>(m);
    for (std::size_t q = 0; q < m; ++q) {
      const double a = lo + width * static_cast<double>(q);
      const double b = (q + 1 == m) ? hi : a + width;
      const bool left = opts.grade_breakpoints && q == 0;
      const bool right = opts.grade_breakpoints && q + 1 == m && hi_is_break;
      const Grading g = left && right ? Grading::both
                        : left        ? Grading::left
                        : right       ? Grading::right
                                      : Grading::none;
      for (std::size_t i = 0; i < ref.s.size(); ++i) {
        const auto [omega, jac] = map_node(ref.s[i], a, b, g);
        rule.nodes.push_back(omega);
        rule.weights.push_back(ref.w[i] * jac);
      }
      if (p + 2 == edges.size() && q + 1 == m) rule.last_panel_lower = a;
    }
  }
  return rule;
}

QuadResult quad_apply(const std::function<Complex(double)>& integrand, const QuadRule& rule,
                      double tail_decay_power) {
  QuadResult res{{0.0, 0.0}, 0.0};
  double envelope = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double omega = rule.nodes[i];
    const Complex v = integrand(omega);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "non-finite integrand at omega = " << omega;
      throw QuadratureError(msg.str());
    }
    res.value += rule.weights[i] * v;
    if (omega >= rule.last_panel_lower) envelope = std::max(envelope, std::abs(v));
  }
  res.tail_estimate = tail_decay_power > 1.0
                          ? envelope * rule.omega_max / (tail_decay_power - 1.0)
                          : std::numeric_limits<double>::infinity();
  return res;
}

QuadResult quad_panels(const std::function<Complex(double)>& integrand,
                       std::span<const double> breakpoints, double omega_max,
                       const QuadOptions& opts) {
  return quad_apply(integrand, panel_rule(breakpoints, omega_max, opts), opts.tail_decay_power);
}

}  // namespace kgtx
