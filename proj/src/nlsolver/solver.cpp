#include <algorithm>
#include <cmath>
#include <sstream>

#include "kgtx/nlsolver.hpp"

namespace kgtx {

double node_value(std::span<const double> u1_interior, std::span<const double> u2_interior) {
  if (u1_interior.size() < 2 || u2_interior.size() < 2)
    throw ConfigError("node_value needs two interior samples per branch");
  return (4.0 * (u1_interior[0] + u2_interior[0]) - (u1_interior[1] + u2_interior[1])) / 6.0;
}

const char* scheme_name(Scheme s) { return s == Scheme::conserving ? "conserving" : "leapfrog"; }

namespace {

void check_cfl(double dt, double h, double c, const SolverLimits& lim) {
  const double nu = c * std::abs(dt) / h;
  if (!(dt != 0.0 && std::isfinite(dt))) throw ConfigError("time step must be nonzero and finite");
  if (nu > lim.cfl_max * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "CFL violated: c*dt/h = " << nu << " > " << lim.cfl_max;
    throw ConfigError(msg.str());
  }
}

void close_node(BranchField& f) {
  const std::size_t n = f.grid.n();
  f.u1[n - 1] = 0.0;
  f.u2[n - 1] = 0.0;
  const double u0 = node_value(std::span(f.u1).subspan(1), std::span(f.u2).subspan(1));
  f.u1[0] = u0;
  f.u2[0] = u0;
}

void check_finite(const BranchField& f, std::size_t step_index) {
  for (int k = 1; k <= 2; ++k) {
    for (double v : f.branch(k)) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite field at step " << step_index;
        throw NumericalError(msg.str());
      }
    }
  }
}

// Per-point conserving update: solve
//   w (1 + dt^2 a/2) - rhs - dt^2 Q(w, p) = 0,  Q = (G(w) - G(p))/(w - p).
double conserving_point(double rhs, double p, double a, double dt2, double guess,
                        const NonlinearitySpec& spec, const SolverLimits& lim,
                        std::size_t step_index, std::size_t i) {
  const double diag = 1.0 + 0.5 * dt2 * a;
  if (spec.is_zero()) return rhs / diag;
  double w = guess;
  for (int it = 0; it < lim.newton_max_iter; ++it) {
    const double r = w * diag - rhs - dt2 * spec.divided_primitive(w, p);
    // dQ/dw is about F'/2 near w = p.
    const double fp = spec.Fprime ? spec.Fprime(0.5 * (w + p)) : 0.0;
    const double dw = r / (diag - 0.5 * dt2 * fp);
    w -= dw;
    if (std::abs(dw) <= lim.newton_tol * std::max(std::abs(w), 1e-300)) return w;
  }
  std::ostringstream msg;
  msg << "Newton iteration did not converge at step " << step_index << ", point " << i;
  throw NumericalError(msg.str());
}

}  // namespace

SolverState initial_state(const BranchField& f, const NonlinearitySpec& spec,
                          const PhysicsParams& params, double dt, Scheme scheme,
                          const SolverLimits& limits) {
  const double h = f.grid.h();
  const double c2 = params.c() * params.c();
  check_cfl(dt, h, params.c(), limits);
  BranchField next(f.grid);
  const std::size_t n = f.grid.n();
  for (int k = 1; k <= 2; ++k) {
    const auto& u = f.branch(k);
    auto& v = next.branch(k);
    const double a = params.a(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
      v[i] = u[i] + 0.5 * dt * dt * (c2 * lap - a * u[i] + spec.F(u[i]));
    }
  }
  close_node(next);
  check_finite(next, 1);
  return SolverState{dt, dt, scheme, 1, f, std::move(next)};
}

SolverState step(const SolverState& s, const NonlinearitySpec& spec, const PhysicsParams& params,
                 const SolverLimits& limits) {
  const double h = s.cur.grid.h();
  const double dt = s.dt, dt2 = dt * dt;
  const double c2 = params.c() * params.c();
  check_cfl(dt, h, params.c(), limits);
  const std::size_t n = s.cur.grid.n();
  const std::size_t index = s.step_index + 1;
  BranchField next(s.cur.grid);
  for (int k = 1; k <= 2; ++k) {
    const auto& u = s.cur.branch(k);
    const auto& p = s.prev.branch(k);
    auto& w = next.branch(k);
    const double a = params.a(k);
    if (s.scheme == Scheme::leapfrog) {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
        w[i] = 2.0 * u[i] - p[i] + dt2 * (c2 * lap - a * u[i] + spec.F(u[i]));
      }
    } else {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
        const double rhs = 2.0 * u[i] - p[i] + dt2 * (c2 * lap - 0.5 * a * p[i]);
        w[i] = conserving_point(rhs, p[i], a, dt2, 2.0 * u[i] - p[i], spec, limits, index, i);
      }
    }
  }
  close_node(next);
  check_finite(next, index);
  return SolverState{s.t + dt, dt, s.scheme, index, s.cur, std::move(next)};
}

SolverState reversed(const SolverState& s) {
  return SolverState{s.t - s.dt, -s.dt, s.scheme, s.step_index, s.cur, s.prev};
}

BranchField sample_datum(const InitialDatum& datum, const BranchGrid& grid) {
  datum.validate();
  BranchField f(grid);
  for (std::size_t i = 1; i < grid.n(); ++i) {
    f.u1[i] = datum.f1(grid.x(i));
    f.u2[i] = datum.f2(grid.x(i));
  }
  return f;
}

double resolve_dt(const RunOptions& opts, double h, double c, double T) {
  if (opts.dt != 0.0) {
    if (!(opts.dt > 0.0)) throw ConfigError("dt must be positive");
    return opts.dt;
  }
  if (!(opts.cfl > 0.0)) throw ConfigError("cfl must be positive");
  const double target = opts.cfl * h / c;
  if (!(T > 0.0)) return target;
  return T / std::ceil(T / target - 1e-9);
}

Trajectory run(const InitialDatum& datum, const NonlinearitySpec& spec,
               const PhysicsParams& params, const BranchGrid& grid, double T,
               const RunOptions& opts) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("final time T must be nonnegative");
  Trajectory traj;
  const ValidationResult v = validate_nonlinearity(spec);
  if (!v.ok) {
    if (!opts.allow_inadmissible) throw ConfigError("nonlinearity rejected: " + v.message);
    traj.override_used = true;
  }
  datum.validate();
  double x_hi = 0.0;
  if (!datum.f1.is_zero()) x_hi = std::max(x_hi, datum.f1.support().second);
  if (!datum.f2.is_zero()) x_hi = std::max(x_hi, datum.f2.support().second);
  const double h = grid.h(), c = params.c();
  if (!(grid.extent() > x_hi + c * T + 10.0 * h)) {
    std::ostringstream msg;
    msg << "grid extent " << grid.extent() << " must exceed x_hi + cT + 10h = "
        << x_hi + c * T + 10.0 * h;
    throw ConfigError(msg.str());
  }
  if (!(opts.growth_guard > 1.0)) throw ConfigError("growth guard must exceed 1");

  const double dt = resolve_dt(opts, h, c, T);
  traj.dt = dt;
  const auto steps = static_cast<std::size_t>(std::llround(T / dt));
  if (std::abs(static_cast<double>(steps) * dt - T) > 1e-9 * std::max(1.0, T))
    throw ConfigError("T is not a whole number of time steps");

  std::vector<std::pair<std::size_t, double>> wanted;
  for (double ts : opts.snapshot_times) {
    if (!(ts >= 0.0 && ts <= T * (1.0 + 1e-12))) throw ConfigError("snapshot time outside [0, T]");
    const auto n = static_cast<std::size_t>(std::llround(ts / dt));
    if (std::abs(static_cast<double>(n) * dt - ts) > 1e-9 * std::max(1.0, ts))
      throw ConfigError("snapshot time " + std::to_string(ts) + " is not on the time grid");
    wanted.emplace_back(n, ts);
  }
  std::sort(wanted.begin(), wanted.end());
  std::size_t next_snap = 0;
  auto take = [&](std::size_t n, const BranchField& f) {
    while (next_snap < wanted.size() && wanted[next_snap].first == n)
      traj.snapshots.push_back(Snapshot{wanted[next_snap++].second, f});
  };

  const BranchField f0 = sample_datum(datum, grid);
  take(0, f0);
  if (steps == 0) return traj;

  const double initial = f0.max_abs();
  auto guard = [&](const SolverState& s) {
    if (initial > 0.0 && s.cur.max_abs() > opts.growth_guard * initial) {
      std::ostringstream msg;
      msg << "amplitude grew beyond " << opts.growth_guard << "x its initial value at step "
          << s.step_index;
      throw NumericalError(msg.str());
    }
  };

  SolverState s = initial_state(f0, spec, params, dt, opts.scheme, opts.limits);
  for (;;) {
    guard(s);
    EnergyReport e = energy(s, spec, params);
    e.t = (static_cast<double>(s.step_index) - 0.5) * dt;  // not the accumulated sum
    traj.energy.push_back(e);
    take(s.step_index, s.cur);
    if (opts.on_step) opts.on_step(s);
    if (s.step_index == steps) break;
    s = step(s, spec, params, opts.limits);
  }
  traj.steps = steps;
  return traj;
}

}  // namespace kgtx
