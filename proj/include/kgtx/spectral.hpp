#pragma once

#include <utility>
#include <vector>

#include "kgtx/core.hpp"
#include "kgtx/dispersion.hpp"
#include "kgtx/fourier.hpp"

namespace kgtx {

/// A(1 - s^2)^3 cos(carrier*(x - center)), s = (x - center)/width, on |s| <= 1.
/// C^2 with compact support; the carrier turns it into a wave packet.
struct Bump {
  double amplitude = 1.0;
  double center = 1.5;
  double width = 0.4;
  double carrier = 0.0;

  double value(double x) const;
  double lower() const { return center - width; }
  double upper() const { return center + width; }
};

/// Sum of bumps on a half-line. The empty profile is the zero function.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Bump> bumps);
  static Profile bump(double amplitude, double center, double width, double carrier = 0.0);

  double operator()(double x) const;
  bool is_zero() const { return bumps_.empty(); }
  const std::vector<Bump>& bumps() const { return bumps_; }
  /// Convex hull of the bump supports; (0, 0) for the zero profile.
  std::pair<double, double> support() const;
  /// Upper bound on sup|f| (sum of |amplitude|).
  double amplitude_bound() const;
  Profile scaled(double factor) const;
  Profile plus(const Profile& other) const;

 private:
  std::vector<Bump> bumps_;
};

/// Samples of a profile on a uniform grid, integrating f(x) exp(-z(x - shift))
/// by the rectangle rule. For smooth compactly supported f the error is the
/// aliased spectrum at 2*pi/dx - |Re z|, so dx is chosen from the largest
/// real frequency required.
class ProfileTransform {
 public:
  ProfileTransform() = default;
  ProfileTransform(const Profile& f, double max_frequency, int oversample = 4);

  /// int f(x) exp(-p (x - shift)) dx for complex p.
  Complex laplace(Complex p, double shift = 0.0) const;
  /// Ff(z) = int f(x) exp(-i z x) dx.
  Complex fourier(Complex z) const { return laplace(Complex(0.0, 1.0) * z); }
  double spacing() const { return dx_; }
  std::size_t size() const { return fx_.size(); }
  bool empty() const { return fx_.empty(); }

 private:
  double x0_ = 0.0, dx_ = 0.0;
  std::vector<double> fx_;
};

/// Initial displacement on each branch; the initial velocity is zero.
struct InitialDatum {
  Profile f1;
  Profile f2;

  /// Throws ConfigError unless every support lies in (0, inf).
  void validate() const;
};

struct SpectralConfig {
  /// Target for the frequency truncation error, relative to sup|f|.
  double tolerance = 1e-7;
  /// Cutoff in the wavenumber variable q; 0 picks it from `tolerance`.
  double q_max = 0.0;
  /// Evaluation window; panel widths are sized to resolve oscillation there.
  double t_max = 1.0;
  double x_max = 4.0;
  int n_per_panel = 16;
  /// Assumed decay |Ff(q)| ~ q^-p beyond the cutoff for the tail bound.
  double tail_decay_power = 2.0;
  double q_max_limit = 1e5;
};

/// Closed-form linear solution (F = 0) of the two-branch problem from
/// zero-velocity data. Tables over frequency are built once; evaluation is
/// const and reentrant.
///
/// Wavenumber form (f2 = 0 only), with A(q) = Ff1(q), Omega = sqrt(a1 + c^2 q^2):
///   u1 = (1/pi) Re int_0^Q cos(Omega t) [A + C_R conj(A)] e^{iqx} dq
///   u2 = (1/pi) Re int_0^Q cos(Omega t) T conj(A) e^{i s x / c} dq
/// Frequency form over omega in [sqrt(a1), Omega(Q)] with resolvent exponents
/// K_j = -i sqrt((w^2 - a_j)/c^2) above a_j and +sqrt((a_j - w^2)/c^2) below:
///   u1 = 1/(2 pi c^2) int cos(w t) Im[ 2w/K1 (e^{K1 x} + rho e^{-K1 x}) J1
///                                      + 4w/(K1 + K2) e^{-K1 x} J2 ] dw
/// where J_j = int f_j(u) e^{-K_j u} du and rho = (K1 - K2)/(K1 + K2).
class SpectralSolver {
 public:
  SpectralSolver(const PhysicsParams& params, InitialDatum datum, SpectralConfig cfg = {});

  double u1_frequency(double t, double x) const;
  double u1_wavenumber(double t, double x) const;
  double u2_wavenumber(double t, double x) const;

  /// Wavenumber-form solution on both branches of `grid` at time t.
  BranchField sample(double t, const BranchGrid& grid) const;

  double q_max() const { return q_max_; }
  /// Estimated truncation error of the wavenumber integrals.
  double tail_bound() const { return tail_bound_; }
  std::size_t node_count() const { return q_nodes_.size(); }
  const PhysicsParams& params() const { return params_; }

 private:
  void check_point(double t, double x) const;
  void require_no_f2() const;

  PhysicsParams params_;
  InitialDatum datum_;
  SpectralConfig cfg_;
  double q_max_ = 0.0;
  double tail_bound_ = 0.0;

  // wavenumber form: weight/pi, Omega, A + C_R conj(A), T conj(A), s/c
  std::vector<double> q_nodes_, q_weights_, q_omega_;
  std::vector<Complex> q_refl_, q_trans_, q_sc_;

  // frequency form: weight/(2 pi c^2), omega, -i q (=K1), coefficient of e^{K1 x},
  // coefficient of e^{-K1 x}
  std::vector<double> w_nodes_, w_weights_;
  std::vector<Complex> w_k1_, w_direct_, w_mirror_;
};

/// u(t) = F^-1[cos(sqrt(a + c^2 w^2) t) Ff] on the full line, a >= 0.
/// Throws WindowError if the support of f comes within c*t of the window edge.
GridFunction kg_fullline_propagate(const GridFunction& f, double t, double a, double c);

struct FullLineState {
  GridFunction u;
  GridFunction ut;
};

/// Displacement and velocity of the same evolution.
FullLineState kg_fullline_evolve(const GridFunction& f, double t, double a, double c);

}  // namespace kgtx
