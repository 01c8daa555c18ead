#include "kgtx/dispersion.hpp"

#include <cmath>
#include <sstream>

namespace kgtx {

namespace {
constexpr double kCut = -kPi / 2.0;
}

Band classify_band(double omega, const PhysicsParams& p) {
  const double edge = p.cut_frequency();
  const double a = std::abs(omega);
  if (a < edge) return Band::tunneling;
  if (a > edge) return Band::propagating;
  return Band::edge;
}

const char* band_name(Band b) {
  switch (b) {
    case Band::tunneling:
      return "tunneling";
    case Band::edge:
      return "edge";
    case Band::propagating:
    default:
      return "propagating";
  }
}

Complex dispersion_K(int branch, double omega_sq, const PhysicsParams& p) {
  const double a = p.a(branch);
  const double c2 = p.c() * p.c();
  if (omega_sq <= a) return {std::sqrt((a - omega_sq) / c2), 0.0};
  return {0.0, std::sqrt((omega_sq - a) / c2)};
}

Complex s_composite(Complex omega, const PhysicsParams& p) {
  const Complex cw = p.c() * omega;
  const Complex minus = cw - p.k();
  const Complex plus = cw + p.k();
  if ((minus.real() == 0.0 && minus.imag() < 0.0) || (plus.real() == 0.0 && plus.imag() < 0.0)) {
    std::ostringstream msg;
    msg << "omega = " << omega << " lies on a branch cut of sqrt(c^2 w^2 - k^2)";
    throw NumericalError(msg.str());
  }
  return branch_sqrt(minus, kCut) * branch_sqrt(plus, kCut);
}

Complex reflection_coeff(Complex omega, const PhysicsParams& p) {
  const Complex cw = p.c() * omega;
  const Complex s = s_composite(omega, p);
  const Complex den = cw + s;
  if (den == Complex(0.0, 0.0)) throw NumericalError("reflection coefficient: vanishing denominator");
  return (cw - s) / den;
}

Complex transmission_coeff(Complex omega, const PhysicsParams& p) {
  const Complex cw = p.c() * omega;
  const Complex s = s_composite(omega, p);
  const Complex den = cw + s;
  if (den == Complex(0.0, 0.0))
    throw NumericalError("transmission coefficient: vanishing denominator");
  return 2.0 * cw / den;
}

CoefficientValue reflection_at(double omega, const PhysicsParams& p) {
  return {omega, reflection_coeff(omega, p), classify_band(omega, p)};
}

CoefficientValue transmission_at(double omega, const PhysicsParams& p) {
  return {omega, transmission_coeff(omega, p), classify_band(omega, p)};
}

AsymptoteReport asymptote_check(const PhysicsParams& p, const std::vector<double>& radii,
                                const std::vector<double>& angles, double bound) {
  AsymptoteReport rep;
  rep.bound = bound;
  auto record = [&](double r, double theta) {
    const Complex w = std::polar(r, theta);
    AsymptoteSample s{r, theta, reflection_coeff(w, p), transmission_coeff(w, p)};
    const double m = std::max(std::abs(s.reflection), std::abs(s.transmission));
    rep.max_modulus = std::max(rep.max_modulus, m);
    if (!(m <= bound)) {
      rep.pass = false;
      rep.failures.push_back({r, theta, "coefficient modulus exceeds bound"});
    }
    rep.samples.push_back(s);
    return s;
  };

  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw ConfigError("asymptote_check: radii must be positive and increasing");
  }
  for (double th : angles) {
    if (!(th > 0.0 && th < kPi)) throw ConfigError("asymptote_check: angles must lie in (0, pi)");
    for (double r : radii) record(r, th);
  }

  // Real axis: both coefficients must settle monotonically.
  const double far = 10.0 * p.cut_frequency();
  double prev_r = -1.0, prev_cr = 0.0, prev_t = 0.0;
  for (double r : radii) {
    const AsymptoteSample s = record(r, 0.0);
    if (r < far) continue;
    const double cr = std::abs(s.reflection);
    const double dt = std::abs(s.transmission - 1.0);
    if (prev_r > 0.0 && (cr > prev_cr || dt > prev_t)) {
      rep.pass = false;
      rep.failures.push_back({r, 0.0, "real-axis coefficients not decreasing towards (0, 1)"});
    }
    prev_r = r;
    prev_cr = cr;
    prev_t = dt;
  }
  return rep;
}

}  // namespace kgtx
