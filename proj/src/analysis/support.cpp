#include <algorithm>
#include <cmath>
#include <limits>

#include "kgtx/analysis.hpp"

namespace kgtx {

SupportReport support_interval(const BranchField& f, double eps_rel, double t) {
  if (!(eps_rel > 0.0 && eps_rel < 1.0)) throw ConfigError("eps_rel must lie in (0, 1)");
  SupportReport r;
  r.t = t;
  r.eps_rel = eps_rel;
  r.max_amplitude = f.max_abs();
  if (r.max_amplitude == 0.0) return r;
  const double thr = eps_rel * r.max_amplitude;
  const BranchGrid& g = f.grid;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int k = 1; k <= 2; ++k) {
    const auto& u = f.branch(k);
    for (std::size_t i = 0; i < g.n(); ++i) {
      if (std::abs(u[i]) > thr) {
        const double X = BranchGrid::global(k, g.x(i));
        lo = std::min(lo, X);
        hi = std::max(hi, X);
      }
    }
  }
  r.empty = false;
  r.x_min = lo;
  r.x_max = hi;
  for (int k = 1; k <= 2; ++k) {
    const auto& u = f.branch(k);
    for (std::size_t i = 0; i < g.n(); ++i) {
      const double X = BranchGrid::global(k, g.x(i));
      if (X >= lo && X <= hi) continue;
      const double w = (i == 0 || i + 1 == g.n()) ? 0.5 : 1.0;  // node shared by both branches
      r.tail_mass += w * g.h() * u[i] * u[i];
    }
  }
  return r;
}

CausalityReport causality_check(const std::vector<Snapshot>& snapshots,
                                std::pair<double, double> sigma, const PhysicsParams& params,
                                double eps_rel, double delta, double outside_tol) {
  if (snapshots.empty()) throw ConfigError("causality check needs at least one snapshot");
  const BranchGrid& g = snapshots.front().field.grid;
  const double h = g.h(), c = params.c();
  if (!(delta >= 2.0 * h * (1.0 - 1e-12))) throw ConfigError("cone margin delta must be >= 2h");
  if (!(sigma.first <= sigma.second)) throw ConfigError("initial support interval is reversed");

  CausalityReport rep;
  rep.delta = delta;
  rep.eps_rel = eps_rel;
  rep.outside_tol = outside_tol;
  double t_last = 0.0;
  std::vector<double> ts, his, los;
  for (const Snapshot& s : snapshots) {
    ConeCheck cc;
    cc.t = s.t;
    cc.support = support_interval(s.field, eps_rel, s.t);
    cc.cone_lo = sigma.first - c * s.t - delta;
    cc.cone_hi = sigma.second + c * s.t + delta;
    const double slack = 1e-12 * std::max(1.0, std::abs(cc.cone_hi) + std::abs(cc.cone_lo));
    if (!cc.support.empty) {
      cc.excess = std::max({0.0, cc.cone_lo - cc.support.x_min, cc.support.x_max - cc.cone_hi});
      ts.push_back(s.t);
      his.push_back(cc.support.x_max - sigma.second);
      los.push_back(sigma.first - cc.support.x_min);
      double out = 0.0;
      for (int k = 1; k <= 2; ++k) {
        const auto& u = s.field.branch(k);
        for (std::size_t i = 0; i < g.n(); ++i) {
          const double X = BranchGrid::global(k, g.x(i));
          if (X < cc.cone_lo - slack || X > cc.cone_hi + slack) out = std::max(out, std::abs(u[i]));
        }
      }
      cc.outside_amplitude = out / cc.support.max_amplitude;
    }
    cc.pass = cc.excess <= slack && cc.outside_amplitude <= outside_tol;
    rep.pass = rep.pass && cc.pass;
    rep.worst_excess = std::max(rep.worst_excess, cc.excess);
    t_last = std::max(t_last, s.t);
    rep.snapshots.push_back(cc);
  }

  // Edge speed: least-squares slope of the spread beyond Sigma against t.
  auto slope = [&](const std::vector<double>& y) {
    const std::size_t n = ts.size();
    if (n == 0) return 0.0;
    if (n == 1) return ts[0] > 0.0 ? y[0] / ts[0] : 0.0;
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mt += ts[i];
      my += y[i];
    }
    mt /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxy += (ts[i] - mt) * (y[i] - my);
      sxx += (ts[i] - mt) * (ts[i] - mt);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
  };
  rep.wavefront_speed = std::max(slope(his), slope(los));
  rep.speed_limit = t_last > 0.0 ? c * (1.0 + 2.0 * h / (c * t_last)) : c;
  if (rep.wavefront_speed > rep.speed_limit) rep.pass = false;
  return rep;
}

bool nonlinearity_preserves_support(const BranchField& f, const NonlinearitySpec& spec,
                                    double eps_rel) {
  BranchField image(f.grid);
  for (int k = 1; k <= 2; ++k) {
    const auto& u = f.branch(k);
    auto& v = image.branch(k);
    for (std::size_t i = 0; i < u.size(); ++i) {
      v[i] = spec.F(u[i]);
      if (u[i] == 0.0 && v[i] != 0.0) return false;
    }
  }
  const SupportReport su = support_interval(f, eps_rel);
  const SupportReport sf = support_interval(image, eps_rel);
  if (sf.empty) return true;
  if (su.empty) return false;
  return sf.x_min >= su.x_min && sf.x_max <= su.x_max;
}

}  // namespace kgtx
