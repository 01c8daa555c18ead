#include <algorithm>
#include <cmath>
#include <limits>

#include "kgtx/spectral.hpp"

namespace kgtx {

double Bump::value(double x) const {
  const double s = (x - center) / width;
  if (!(std::abs(s) < 1.0)) return 0.0;
  const double b = 1.0 - s * s;
  const double env = amplitude * b * b * b;
  return carrier == 0.0 ? env : env * std::cos(carrier * (x - center));
}

Profile::Profile(std::vector<Bump> bumps) : bumps_(std::move(bumps)) {
  for (const Bump& b : bumps_) {
    if (!(std::isfinite(b.amplitude) && std::isfinite(b.center) && std::isfinite(b.carrier)))
      throw ConfigError("bump parameters must be finite");
    if (!(b.width > 0.0 && std::isfinite(b.width))) throw ConfigError("bump width must be positive");
  }
}

Profile Profile::bump(double amplitude, double center, double width, double carrier) {
  return Profile({Bump{amplitude, center, width, carrier}});
}

double Profile::operator()(double x) const {
  double v = 0.0;
  for (const Bump& b : bumps_) v += b.value(x);
  return v;
}

std::pair<double, double> Profile::support() const {
  if (bumps_.empty()) return {0.0, 0.0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Bump& b : bumps_) {
    lo = std::min(lo, b.lower());
    hi = std::max(hi, b.upper());
  }
  return {lo, hi};
}

double Profile::amplitude_bound() const {
  double s = 0.0;
  for (const Bump& b : bumps_) s += std::abs(b.amplitude);
  return s;
}

Profile Profile::scaled(double factor) const {
  std::vector<Bump> out = bumps_;
  for (Bump& b : out) b.amplitude *= factor;
  return Profile(std::move(out));
}

Profile Profile::plus(const Profile& other) const {
  std::vector<Bump> out = bumps_;
  out.insert(out.end(), other.bumps_.begin(), other.bumps_.end());
  return Profile(std::move(out));
}

ProfileTransform::ProfileTransform(const Profile& f, double max_frequency, int oversample) {
  if (f.bumps().empty()) return;
  if (!(max_frequency > 0.0) || oversample < 1)
    throw ConfigError("profile transform needs a positive frequency and oversampling");
  double narrowest = std::numeric_limits<double>::infinity();
  double top_carrier = 0.0;
  for (const Bump& b : f.bumps()) {
    narrowest = std::min(narrowest, b.width);
    top_carrier = std::max(top_carrier, std::abs(b.carrier));
  }
  // Aliases land at 2*pi/dx - q; keep them far out in the q^-4 tail.
  const double reach = std::max(max_frequency, top_carrier + 32.0 / narrowest);
  dx_ = std::min(2.0 * kPi / (static_cast<double>(oversample) * reach), narrowest / 64.0);
  const auto [lo, hi] = f.support();
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / dx_)) + 1;
  x0_ = lo;
  fx_.resize(n);
  for (std::size_t j = 0; j < n; ++j) fx_[j] = f(x0_ + static_cast<double>(j) * dx_);
}

Complex ProfileTransform::laplace(Complex p, double shift) const {
  if (fx_.empty()) return {0.0, 0.0};
  // Phase recurrence, re-anchored every block to keep the drift at roundoff.
  constexpr std::size_t kBlock = 64;
  const Complex step = std::exp(-p * dx_);
  Complex acc(0.0, 0.0);
  for (std::size_t j0 = 0; j0 < fx_.size(); j0 += kBlock) {
    Complex e = std::exp(-p * (x0_ + static_cast<double>(j0) * dx_ - shift));
    const std::size_t j1 = std::min(fx_.size(), j0 + kBlock);
    for (std::size_t j = j0; j < j1; ++j) {
      acc += fx_[j] * e;
      e *= step;
    }
  }
  return acc * dx_;
}

void InitialDatum::validate() const {
  for (const Profile* f : {&f1, &f2}) {
    for (const Bump& b : f->bumps()) {
      if (!(b.lower() > 0.0))
        throw ConfigError("initial profile support must lie in (0, inf): bump reaches x = " +
                          std::to_string(b.lower()));
    }
  }
}

}  // namespace kgtx
