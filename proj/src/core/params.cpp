#include <cmath>
#include <sstream>

#include "kgtx/core.hpp"

namespace kgtx {

PhysicsParams::PhysicsParams(double c, double a1, double a2)
    : c_(c), a1_(a1), a2_(a2), k_(std::sqrt(a2 - a1)) {}

PhysicsParams PhysicsParams::make(double c, double a1, double a2) {
  if (!(std::isfinite(c) && std::isfinite(a1) && std::isfinite(a2)))
    throw ConfigError("physics parameters must be finite");
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (!(a1 > 0.0)) throw ConfigError("a1 must be positive");
  if (!(a2 > a1)) throw ConfigError("a2 must exceed a1");
  return PhysicsParams(c, a1, a2);
}

PhysicsParams PhysicsParams::make_flat(double c, double a1, double a2) {
  if (!(std::isfinite(c) && std::isfinite(a1) && std::isfinite(a2)))
    throw ConfigError("physics parameters must be finite");
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (!(a1 > 0.0)) throw ConfigError("a1 must be positive");
  if (!(a2 >= a1)) throw ConfigError("a2 must not be below a1");
  return PhysicsParams(c, a1, a2);
}

}  // namespace kgtx
