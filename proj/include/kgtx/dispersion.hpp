#pragma once

#include <string>
#include <vector>

#include "kgtx/core.hpp"

namespace kgtx {

/// Real frequencies below k/c lie in the tunneling band: the transmitted
/// wave is evanescent and the reflection coefficient has unit modulus.
enum class Band { tunneling, edge, propagating };

Band classify_band(double omega, const PhysicsParams& p);
const char* band_name(Band b);

struct CoefficientValue {
  double omega = 0.0;
  Complex value;
  Band band = Band::propagating;
};

/// Decay exponent of branch j at squared frequency omega_sq:
/// sqrt((a_j - w^2)/c^2) below a_j, i*sqrt((w^2 - a_j)/c^2) above.
Complex dispersion_K(int branch, double omega_sq, const PhysicsParams& p);

/// sqrt(c^2 w^2 - k^2) as the product of two square roots with cuts pointing
/// straight down from +-k/c. Analytic off the cuts, continuous on the closed
/// upper half-plane. Throws NumericalError for omega exactly on a cut.
Complex s_composite(Complex omega, const PhysicsParams& p);

/// C_R = (wc - s)/(wc + s) and T = 2wc/(wc + s), s = s_composite(w).
Complex reflection_coeff(Complex omega, const PhysicsParams& p);
Complex transmission_coeff(Complex omega, const PhysicsParams& p);

CoefficientValue reflection_at(double omega, const PhysicsParams& p);
CoefficientValue transmission_at(double omega, const PhysicsParams& p);

struct AsymptoteFailure {
  double r = 0.0;
  double theta = 0.0;
  std::string what;
};

struct AsymptoteSample {
  double r = 0.0;
  double theta = 0.0;
  Complex reflection;
  Complex transmission;
};

struct AsymptoteReport {
  bool pass = true;
  double bound = 10.0;
  double max_modulus = 0.0;  // max of |C_R|, |T| over all samples
  std::vector<AsymptoteSample> samples;
  std::vector<AsymptoteFailure> failures;
};

/// Samples C_R and T on arcs r*e^{i theta} of the upper half-plane and on the
/// positive real axis. Fails on a modulus above `bound`, or if on the real
/// axis beyond 10 k/c |C_R| and |T - 1| are not decreasing in r.
AsymptoteReport asymptote_check(const PhysicsParams& p, const std::vector<double>& radii,
                                const std::vector<double>& angles, double bound = 10.0);

}  // namespace kgtx
