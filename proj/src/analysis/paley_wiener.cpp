#include <algorithm>
#include <cmath>
#include <map>

#include "kgtx/analysis.hpp"

namespace kgtx {

std::vector<Complex> pw_ray_samples(const std::vector<double>& angles, double r_min, double r_max,
                                    int per_ray) {
  if (!(r_min > 0.0 && r_max > r_min) || per_ray < 2)
    throw ConfigError("ray sampling needs 0 < r_min < r_max and two points per ray");
  std::vector<Complex> z;
  for (double th : angles) {
    if (!(th >= 0.0 && th <= kPi)) throw ConfigError("ray angles must lie in [0, pi]");
    for (int i = 0; i < per_ray; ++i)
      z.push_back(std::polar(r_min + (r_max - r_min) * i / (per_ray - 1), th));
  }
  return z;
}

PwReport pw_bound_check(const Profile& f, const std::vector<Complex>& samples, double tolerance) {
  if (f.is_zero()) throw ConfigError("Paley-Wiener check needs a nonzero profile");
  PwReport rep;
  rep.tolerance = tolerance;
  rep.R = f.support().second;
  double zmax = 0.0;
  for (const Complex& z : samples) {
    if (!(z.imag() >= 0.0) || !std::isfinite(z.real()))
      throw ConfigError("Paley-Wiener samples must lie in the closed upper half-plane");
    zmax = std::max(zmax, std::abs(z));
  }
  // Oversampled so that the e^{Im z x} boundary layer of width ~1/|z| is resolved.
  const ProfileTransform tr(f, 4.0 * std::max(zmax, 1.0), 4);
  {
    const auto [lo, hi] = f.support();
    const int n = 20000;
    for (int i = 0; i <= n; ++i) {
      const double x = lo + (hi - lo) * i / n;
      rep.l1_norm += ((i == 0 || i == n) ? 0.5 : 1.0) * std::abs(f(x));
    }
    rep.l1_norm *= (hi - lo) / n;
  }

  // log|Ff(z)| = Im(z) R + log|int f(x) e^{-iz(x - R)} dx|; the integrand is bounded by |f|.
  std::map<double, std::vector<std::pair<double, double>>> by_angle;
  double logC = -std::numeric_limits<double>::infinity();
  for (const Complex& z : samples) {
    const Complex inner = tr.laplace(Complex(0.0, 1.0) * z, rep.R);
    const double logmod = z.imag() * rep.R + std::log(std::abs(inner));
    const double r = std::abs(z);
    logC = std::max(logC, logmod - rep.R * r);
    if (z.imag() == 0.0) rep.real_axis_max = std::max(rep.real_axis_max, std::abs(inner));
    if (r > 0.0) by_angle[std::round(std::arg(z) * 1e9) / 1e9].emplace_back(r, logmod);
  }
  rep.C_fit = std::exp(logC);

  for (const auto& [theta, pts] : by_angle) {
    if (pts.size() < 2) continue;
    double mr = 0.0, ml = 0.0;
    for (const auto& [r, l] : pts) {
      mr += r;
      ml += l;
    }
    mr /= static_cast<double>(pts.size());
    ml /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [r, l] : pts) {
      sxy += (r - mr) * (l - ml);
      sxx += (r - mr) * (r - mr);
    }
    if (sxx == 0.0) continue;
    PwRay ray{theta, sxy / sxx, static_cast<int>(pts.size())};
    rep.rays.push_back(ray);
    rep.fitted_type = std::max(rep.fitted_type, ray.type);
  }
  rep.pass = rep.fitted_type <= rep.R * (1.0 + tolerance) &&
             rep.real_axis_max <= rep.l1_norm * (1.0 + 1e-9);
  return rep;
}

}  // namespace kgtx
