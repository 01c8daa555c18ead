#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kgtx/errors.hpp"

namespace kgtx {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Wave speed c and dispersion coefficients a1 < a2 of the two branches.
/// k = sqrt(a2 - a1) is derived on construction.
class PhysicsParams {
 public:
  /// Requires c > 0 and 0 < a1 < a2.
  static PhysicsParams make(double c, double a1, double a2);
  /// Same as make() but admits a1 == a2 (no potential step). Only the
  /// reduction oracles use this.
  static PhysicsParams make_flat(double c, double a1, double a2);

  double c() const { return c_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double a(int branch) const { return branch == 1 ? a1_ : a2_; }
  double k() const { return k_; }
  /// Branch points of the reflection coefficient sit at +-k/c.
  double cut_frequency() const { return k_ / c_; }

 private:
  PhysicsParams(double c, double a1, double a2);
  double c_, a1_, a2_, k_;
};

/// Two half-lines x_i = i*h, i = 0..n-1, sharing the node i = 0.
/// Branch 1 maps to global X = x, branch 2 to X = -x.
class BranchGrid {
 public:
  BranchGrid(double h, std::size_t n);

  double h() const { return h_; }
  std::size_t n() const { return n_; }
  double extent() const { return static_cast<double>(n_ - 1) * h_; }
  double x(std::size_t i) const { return static_cast<double>(i) * h_; }
  static double global(int branch, double x) { return branch == 1 ? x : -x; }

  /// Smallest grid with h and extent >= length.
  static BranchGrid covering(double h, double length);

 private:
  double h_;
  std::size_t n_;
};

/// Real samples on both branches. u1[0] and u2[0] are the shared node value.
struct BranchField {
  explicit BranchField(BranchGrid g);

  BranchGrid grid;
  std::vector<double> u1;
  std::vector<double> u2;

  std::vector<double>& branch(int k) { return k == 1 ? u1 : u2; }
  const std::vector<double>& branch(int k) const { return k == 1 ? u1 : u2; }

  double max_abs() const;
  /// |u1[0] - u2[0]|; zero for every field the solver produces.
  double node_mismatch() const;
  /// Sum of second-order one-sided derivatives at the node, i.e. the
  /// discrete form of u1_x(0+) + u2_x(0+).
  double flux_residual() const;
};

/// Square root with argument window [cut, cut + 2*pi). cut = -pi/2 puts the
/// discontinuity on the downward imaginary ray.
Complex branch_sqrt(Complex z, double cut);

}  // namespace kgtx
