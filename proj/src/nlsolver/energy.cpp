#include <cmath>

#include "kgtx/nlsolver.hpp"

namespace kgtx {

namespace {

// Trapezoid weight: the node and the far end count half.
double tw(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

}  // namespace

EnergyReport energy(const SolverState& s, const NonlinearitySpec& spec, const PhysicsParams& params) {
  const BranchGrid& g = s.cur.grid;
  const double h = g.h();
  const std::size_t n = g.n();
  const double c2 = params.c() * params.c();
  EnergyReport e;
  e.t = s.t - 0.5 * s.dt;
  for (int k = 1; k <= 2; ++k) {
    const auto& u = s.cur.branch(k);
    const auto& p = s.prev.branch(k);
    const double a = params.a(k);
    double kin = 0.0, el = 0.0, disp = 0.0, nl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = tw(i, n);
      const double v = (u[i] - p[i]) / s.dt;
      kin += w * v * v;
      disp += w * 0.5 * (u[i] * u[i] + p[i] * p[i]);
      nl += w * 0.5 * (spec.G(u[i]) + spec.G(p[i]));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) el += (u[i + 1] - u[i]) * (p[i + 1] - p[i]);
    e.kinetic += 0.5 * h * kin;
    e.elastic += 0.5 * c2 * el / h;
    e.dispersive += 0.5 * a * h * disp;
    e.nonlinear -= h * nl;
  }
  e.total = e.kinetic + e.elastic + e.dispersive + e.nonlinear;
  return e;
}

EnergyReport static_energy(const BranchField& f, const NonlinearitySpec& spec,
                           const PhysicsParams& params, double t) {
  SolverState s{t + 0.5, 1.0, Scheme::leapfrog, 0, f, f};
  EnergyReport e = energy(s, spec, params);
  e.t = t;
  return e;
}

double half_norm_squared(const EnergyReport& e) { return e.kinetic + e.elastic + e.dispersive; }

}  // namespace kgtx
