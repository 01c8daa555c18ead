#include <algorithm>
#include <cmath>
#include <sstream>

#include "kgtx/nlsolver.hpp"

namespace kgtx {

NonlinearitySpec NonlinearitySpec::none() {
  NonlinearitySpec s;
  s.name = "none";
  s.F = [](double) { return 0.0; };
  s.Fprime = [](double) { return 0.0; };
  s.Fsecond = [](double) { return 0.0; };
  s.G = [](double) { return 0.0; };
  s.quotient = [](double, double) { return 0.0; };
  return s;
}

NonlinearitySpec NonlinearitySpec::cubic(double lambda) {
  if (!std::isfinite(lambda)) throw ConfigError("lambda must be finite");
  NonlinearitySpec s;
  s.name = "cubic";
  s.lambda = lambda;
  s.vanishing = lambda == 0.0;
  s.F = [lambda](double u) { return -lambda * u * u * u; };
  s.Fprime = [lambda](double u) { return -3.0 * lambda * u * u; };
  s.Fsecond = [lambda](double u) { return -6.0 * lambda * u; };
  s.G = [lambda](double w) { return -0.25 * lambda * w * w * w * w; };
  s.quotient = [lambda](double w, double p) {
    return -0.25 * lambda * (w * w * w + w * w * p + w * p * p + p * p * p);
  };
  return s;
}

NonlinearitySpec NonlinearitySpec::custom(std::string name, std::function<double(double)> F,
                                          std::function<double(double)> Fprime,
                                          std::function<double(double)> Fsecond,
                                          std::function<double(double)> G) {
  if (!F || !G) throw ConfigError("a custom nonlinearity needs F and G");
  if (name == "none") throw ConfigError("\"none\" is reserved for F = 0");
  NonlinearitySpec s;
  s.name = std::move(name);
  s.vanishing = false;
  s.F = std::move(F);
  s.Fprime = std::move(Fprime);
  s.Fsecond = std::move(Fsecond);
  s.G = std::move(G);
  return s;
}

double NonlinearitySpec::divided_primitive(double w, double p) const {
  if (quotient) return quotient(w, p);
  const double scale = std::max({1.0, std::abs(w), std::abs(p)});
  if (std::abs(w - p) <= 1e-7 * scale) return F(0.5 * (w + p));
  return (G(w) - G(p)) / (w - p);
}

const char* rejection_name(Rejection r) {
  switch (r) {
    case Rejection::nonzero_at_origin:
      return "F(0) != 0";
    case Rejection::positive_primitive:
      return "G takes positive values";
    case Rejection::primitive_mismatch:
      return "G' does not match F";
    case Rejection::none:
    default:
      return "ok";
  }
}

ValidationResult validate_nonlinearity(const NonlinearitySpec& spec, double range, int samples) {
  if (!spec.F || !spec.G) throw ConfigError("nonlinearity needs F and G");
  if (!(range > 0.0) || samples < 3) throw ConfigError("validation range must be nonempty");
  auto reject = [](Rejection r, double w, const std::string& detail) {
    ValidationResult v;
    v.ok = false;
    v.reason = r;
    v.where = w;
    v.message = std::string(rejection_name(r)) + ": " + detail;
    return v;
  };

  const double f0 = spec.F(0.0);
  if (!(std::abs(f0) <= 1e-12)) {
    std::ostringstream d;
    d << "F(0) = " << f0;
    return reject(Rejection::nonzero_at_origin, 0.0, d.str());
  }
  for (int i = 0; i < samples; ++i) {
    const double w = -range + 2.0 * range * i / (samples - 1);
    const double g = spec.G(w);
    if (!(g <= 1e-12)) {
      std::ostringstream d;
      d << "G(" << w << ") = " << g << " (attractive)";
      return reject(Rejection::positive_primitive, w, d.str());
    }
  }
  for (int i = 0; i < samples; ++i) {
    const double w = -range + 2.0 * range * i / (samples - 1);
    const double d = 1e-4 * std::max(1.0, std::abs(w));
    const double dg = (spec.G(w + d) - spec.G(w - d)) / (2.0 * d);
    const double f = spec.F(w);
    // Central difference error is d^2/6 |G'''| = d^2/6 |F''|.
    double slack = 1e-6 * std::max(1.0, std::abs(f));
    if (spec.Fsecond) slack += d * d * std::abs(spec.Fsecond(w));
    if (!(std::abs(dg - f) <= slack)) {
      std::ostringstream m;
      m << "G'(" << w << ") = " << dg << " but F = " << f;
      return reject(Rejection::primitive_mismatch, w, m.str());
    }
  }
  return {};
}

}  // namespace kgtx
