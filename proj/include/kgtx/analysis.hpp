#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kgtx/core.hpp"
#include "kgtx/nlsolver.hpp"
#include "kgtx/spectral.hpp"

namespace kgtx {

/// Grid-aligned hull of the samples with |u| > eps_rel * max|u|, in the
/// global coordinate X.
struct SupportReport {
  double t = 0.0;
  bool empty = true;
  double x_min = 0.0;
  double x_max = 0.0;
  double eps_rel = 0.0;
  double max_amplitude = 0.0;
  double tail_mass = 0.0;  // trapezoid int u^2 outside [x_min, x_max]
};

SupportReport support_interval(const BranchField& f, double eps_rel, double t = 0.0);

struct ConeCheck {
  double t = 0.0;
  SupportReport support;
  double cone_lo = 0.0;
  double cone_hi = 0.0;
  double excess = 0.0;             // how far the support pokes out of the cone
  double outside_amplitude = 0.0;  // max|u| outside the cone, relative to max|u|
  bool pass = true;
};

struct CausalityReport {
  bool pass = true;
  double delta = 0.0;
  double eps_rel = 0.0;
  double outside_tol = 0.0;
  std::vector<ConeCheck> snapshots;
  double worst_excess = 0.0;
  double wavefront_speed = 0.0;  // fitted speed of the faster support edge
  double speed_limit = 0.0;      // c (1 + 2h/(c T))
};

/// Checks supp u(t) inside [inf Sigma - ct - delta, sup Sigma + ct + delta]
/// and max|u| outside that cone <= outside_tol * max|u| on every snapshot.
/// sigma is the initial support in the global coordinate.
CausalityReport causality_check(const std::vector<Snapshot>& snapshots,
                                std::pair<double, double> sigma, const PhysicsParams& params,
                                double eps_rel, double delta, double outside_tol = 1e-6);

/// F(0) = 0 means F(u) can only be nonzero where u is. Fails if some sample
/// has u = 0 but F(u) != 0, or if the eps-support of F(u) leaves that of u.
bool nonlinearity_preserves_support(const BranchField& f, const NonlinearitySpec& spec,
                                    double eps_rel);

/// Discrete Sobolev norms on a half-line grid: centered differences inside,
/// second-order one-sided at the ends, trapezoid quadrature.
double norm_h1(const std::vector<double>& u, double h);
double norm_h2(const std::vector<double>& u, double h);

struct LipschitzReport {
  double lhs = 0.0;        // ||F(f) - F(g)||_H1
  double diff_h2 = 0.0;    // ||f - g||_H2
  double M = 0.0;          // sup |F'| on the joint range
  double M_prime = 0.0;    // sqrt(2) max(sup |F'| on the range of f, ||g'||_2 sup |F''|)
  double constant = 1.0;
  double rhs = 0.0;        // constant (M + M') ||f - g||_H2
  double ratio = 0.0;      // lhs / ||f - g||_H2, to compare with M + M'
  bool pass = true;
};

/// f and g sampled on x_i = i*h. Needs F' and F''.
LipschitzReport lipschitz_probe(const NonlinearitySpec& spec, const std::vector<double>& f,
                                const std::vector<double>& g, double h, double constant = 1.0);

struct LipschitzAudit {
  int trials = 0;
  int passed = 0;
  double worst_ratio_fraction = 0.0;  // max of ratio / (M + M')
};

/// Random bump pairs (amplitude, center, width drawn from `seed`).
LipschitzAudit lipschitz_audit(const NonlinearitySpec& spec, int trials, std::uint64_t seed,
                               double h = 1.0 / 512, double length = 4.0);

struct PwRay {
  double theta = 0.0;
  double type = 0.0;  // least-squares slope of log|Ff| against |z|
  int samples = 0;
};

struct PwReport {
  double R = 0.0;           // sup of the support
  double C_fit = 0.0;       // smallest C with |Ff(z)| <= C e^{R|z|} on the samples
  double fitted_type = 0.0; // largest ray slope
  double tolerance = 0.1;
  double l1_norm = 0.0;           // int |f|
  double real_axis_max = 0.0;     // max |Ff| over real samples
  std::vector<PwRay> rays;
  bool pass = true;  // fitted_type <= R (1 + tolerance) and |Ff| <= int|f| on the real axis
};

/// z must lie in the closed upper half-plane. Rays are the groups of samples
/// sharing arg z; each needs at least two samples with |z| > 0.
PwReport pw_bound_check(const Profile& f, const std::vector<Complex>& samples,
                        double tolerance = 0.1);

/// Rays at the given angles with radii evenly spaced in [r_min, r_max].
std::vector<Complex> pw_ray_samples(const std::vector<double>& angles, double r_min,
                                    double r_max, int per_ray);

}  // namespace kgtx
