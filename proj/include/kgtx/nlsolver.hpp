#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kgtx/core.hpp"
#include "kgtx/spectral.hpp"

namespace kgtx {

/// Source term F in u_tt - c^2 u_xx + a_k u = F(u), with primitive
/// G(w) = int_0^w F.
struct NonlinearitySpec {
  std::string name = "none";
  double lambda = 0.0;
  /// F is identically zero (also cubic with lambda = 0); the conserving
  /// scheme then skips the Newton solve, so results match "none" bit for bit.
  bool vanishing = true;
  std::function<double(double)> F;
  std::function<double(double)> Fprime;
  std::function<double(double)> Fsecond;
  std::function<double(double)> G;
  /// Exact (G(w) - G(p))/(w - p) if known; the conserving scheme falls back
  /// to the divided difference otherwise.
  std::function<double(double, double)> quotient;

  static NonlinearitySpec none();
  /// F(u) = -lambda u^3, G(w) = -lambda w^4 / 4.
  static NonlinearitySpec cubic(double lambda);
  static NonlinearitySpec custom(std::string name, std::function<double(double)> F,
                                 std::function<double(double)> Fprime,
                                 std::function<double(double)> Fsecond,
                                 std::function<double(double)> G);

  bool is_zero() const { return vanishing; }
  /// (G(w) - G(p))/(w - p), or F at the midpoint when w and p coincide.
  double divided_primitive(double w, double p) const;
};

enum class Rejection { none, nonzero_at_origin, positive_primitive, primitive_mismatch };

struct ValidationResult {
  bool ok = true;
  Rejection reason = Rejection::none;
  std::string message;
  double where = 0.0;  // sample that triggered the rejection
};

const char* rejection_name(Rejection r);

/// Accepts F iff F(0) = 0, G <= 0 on [-range, range] and G' = F there.
ValidationResult validate_nonlinearity(const NonlinearitySpec& spec, double range = 10.0,
                                       int samples = 2001);

/// Shared node value from the first two interior samples of each branch,
/// making the one-sided second-order derivatives sum to zero.
double node_value(std::span<const double> u1_interior, std::span<const double> u2_interior);

enum class Scheme { leapfrog, conserving };
const char* scheme_name(Scheme s);

struct SolverState {
  double t = 0.0;  // time of `cur`
  double dt = 0.0;
  Scheme scheme = Scheme::leapfrog;
  std::size_t step_index = 0;
  BranchField prev;
  BranchField cur;
};

struct SolverLimits {
  double cfl_max = 0.9;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
};

/// Field at t = 0 paired with the Taylor start at t = dt
/// (u^1 = f + dt^2/2 (c^2 D_xx f - a_k f + F(f)), zero initial velocity).
SolverState initial_state(const BranchField& f, const NonlinearitySpec& spec,
                          const PhysicsParams& params, double dt, Scheme scheme,
                          const SolverLimits& limits = {});

/// Advances one time step. Throws ConfigError on a CFL violation and
/// NumericalError on Newton failure or a non-finite field.
SolverState step(const SolverState& s, const NonlinearitySpec& spec, const PhysicsParams& params,
                 const SolverLimits& limits = {});

/// Swaps the time levels and negates dt; stepping then runs backwards.
SolverState reversed(const SolverState& s);

struct EnergyReport {
  double t = 0.0;
  double total = 0.0;
  double kinetic = 0.0;
  double elastic = 0.0;
  double dispersive = 0.0;
  double nonlinear = 0.0;  // -sum int G(u_k)
};

/// Discrete energy between the two time levels of the state, at t - dt/2.
/// Velocities are the difference quotient of the pair, the elastic term is
/// the product of forward differences at both levels, the others are
/// averaged over the two levels. The conserving scheme keeps this exact
/// while the node is at rest.
EnergyReport energy(const SolverState& s, const NonlinearitySpec& spec, const PhysicsParams& params);

/// Energy of a field at rest.
EnergyReport static_energy(const BranchField& f, const NonlinearitySpec& spec,
                           const PhysicsParams& params, double t = 0.0);

/// 1/2 of the squared energy norm of the state: kinetic + elastic + dispersive.
double half_norm_squared(const EnergyReport& e);

BranchField sample_datum(const InitialDatum& datum, const BranchGrid& grid);

struct Snapshot {
  double t = 0.0;
  BranchField field;
};

struct RunOptions {
  Scheme scheme = Scheme::leapfrog;
  double dt = 0.0;  // 0: largest step <= cfl*h/c that lands on T
  double cfl = 0.5;
  SolverLimits limits;
  std::vector<double> snapshot_times;
  double growth_guard = 10.0;
  bool allow_inadmissible = false;
  /// Called after each accepted step.
  std::function<void(const SolverState&)> on_step;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<EnergyReport> energy;  // one per step, at half steps
  double dt = 0.0;
  std::size_t steps = 0;
  bool override_used = false;
};

Trajectory run(const InitialDatum& datum, const NonlinearitySpec& spec,
               const PhysicsParams& params, const BranchGrid& grid, double T,
               const RunOptions& opts = {});

/// dt used by run() for the given options.
double resolve_dt(const RunOptions& opts, double h, double c, double T);

}  // namespace kgtx
