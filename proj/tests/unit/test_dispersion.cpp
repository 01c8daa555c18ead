#include <doctest.h>

#include <cmath>
#include <random>

#include "kgtx/dispersion.hpp"
#include "oracles.hpp"

using namespace kgtx;

namespace {
const PhysicsParams P = PhysicsParams::make(1.0, 1.0, 5.0);  // k = 2
}

TEST_CASE("decay exponents on each side of a_j") {
  CHECK(std::abs(dispersion_K(1, 0.0, P) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(dispersion_K(1, 5.0, P) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(dispersion_K(2, 1.0, P) - Complex(2, 0)) < 1e-15);
  CHECK(dispersion_K(2, 5.0, P) == Complex(0, 0));
  const auto q = PhysicsParams::make(2.0, 1.0, 2.0);
  CHECK(std::abs(dispersion_K(2, 18.0, q) - Complex(0, 2)) < 1e-15);
}

TEST_CASE("composite square root examples") {
  CHECK(std::abs(s_composite(2.0, P)) < 1e-15);
  CHECK(std::abs(s_composite(1.0, P) - Complex(0, std::sqrt(3.0))) < 1e-15);
  CHECK(std::abs(s_composite(-3.0, P) - Complex(-std::sqrt(5.0), 0)) < 1e-15);
  CHECK(std::abs(s_composite(3.0, P) - Complex(std::sqrt(5.0), 0)) < 1e-15);
  CHECK_THROWS_AS(s_composite(Complex(2.0, -1.0), P), NumericalError);
  CHECK_THROWS_AS(s_composite(Complex(-2.0, -0.5), P), NumericalError);
  CHECK_NOTHROW(s_composite(Complex(0.0, -1.0), P));
}

TEST_CASE("reflection and transmission examples") {
  CHECK(std::abs(reflection_coeff(2.0, P) - 1.0) < 1e-15);
  CHECK(std::abs(transmission_coeff(2.0, P) - 2.0) < 1e-15);
  CHECK(std::abs(reflection_coeff(1.0, P) - Complex(-0.5, -std::sqrt(3.0) / 2)) < 1e-14);
  CHECK(std::abs(reflection_coeff(0.0, P) + 1.0) < 1e-15);
  CHECK(std::abs(transmission_coeff(0.0, P)) < 1e-15);
  // large frequency: C_R ~ k^2 / (4 c^2 w^2)
  const double cr = std::abs(reflection_coeff(200.0, P));
  CHECK(cr > 2.5e-5 / 2);
  CHECK(cr < 2.5e-5 * 2);
  CHECK(cr == doctest::Approx(4.0 / (4.0 * 200.0 * 200.0)).epsilon(1e-3));

  const auto v = reflection_at(1.0, P);
  CHECK(v.band == Band::tunneling);
  CHECK(transmission_at(3.0, P).band == Band::propagating);
  CHECK(classify_band(-2.0, P) == Band::edge);
  CHECK(std::string(band_name(Band::tunneling)) == "tunneling");
}

TEST_CASE("real-axis properties against the piecewise formula") {
  std::mt19937_64 rng(3);
  for (const auto& p : {P, PhysicsParams::make(0.7, 0.3, 2.0), PhysicsParams::make(3.0, 1.0, 1.5)}) {
    const double edge = p.cut_frequency();
    std::uniform_real_distribution<double> u(-5.0 * edge, 5.0 * edge);
    for (int i = 0; i < 1000; ++i) {
      const double w = u(rng);
      const Complex s = s_composite(w, p);
      CHECK(std::abs(s - oracle::s_piecewise(w, p.c(), p.k())) <= 1e-12 * std::max(1.0, std::abs(s)));
      const Complex r = reflection_coeff(w, p);
      const Complex t = transmission_coeff(w, p);
      CHECK(std::abs(r + 1.0 - t) < 1e-13);
      if (std::abs(w) < edge) CHECK(std::abs(std::abs(r) - 1.0) < 1e-12);
      if (std::abs(w) > edge * (1 + 1e-9)) CHECK(std::abs(r) < 1.0);
    }
  }
}

TEST_CASE("composite square root is analytic in the upper half-plane") {
  const double d = 1e-4;
  double worst = 0.0;
  for (double re = -6.0; re <= 6.0; re += 0.37)
    for (double im = 0.25; im <= 6.0; im += 0.41) {
      const Complex z(re, im);
      const Complex dx = (s_composite(z + d, P) - s_composite(z - d, P)) / (2 * d);
      const Complex dy =
          (s_composite(z + Complex(0, d), P) - s_composite(z - Complex(0, d), P)) / Complex(0, 2 * d);
      worst = std::max(worst, std::abs(dx - dy));
      // squares back to c^2 w^2 - k^2
      const Complex s = s_composite(z, P);
      CHECK(std::abs(s * s - (z * z - 4.0)) < 1e-12 * std::max(1.0, std::norm(z)));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("continuity onto the real axis from above") {
  for (double w : {-3.0, -1.0, 0.5, 1.9, 2.1, 7.0}) {
    const Complex above = s_composite(Complex(w, 1e-10), P);
    CHECK(std::abs(above - s_composite(w, P)) < 1e-4);
  }
}

TEST_CASE("coefficients along rays in the upper half-plane") {
  // |C_R| -> 0 and T -> 1 on every ray.
  for (double th : {0.1, 0.7, kPi / 2, 2.5, 3.0}) {
    const Complex w = std::polar(1e6, th);
    CHECK(std::abs(reflection_coeff(w, P)) < 1e-10);
    CHECK(std::abs(transmission_coeff(w, P) - 1.0) < 1e-10);
  }
}

TEST_CASE("asymptote check") {
  const std::vector<double> radii{1, 3, 10, 30, 100, 300, 1000};
  const std::vector<double> angles{0.2, 0.8, kPi / 2, 2.3, 3.0};
  const auto rep = asymptote_check(P, radii, angles);
  CHECK(rep.pass);
  CHECK(rep.failures.empty());
  CHECK(rep.max_modulus <= 10.0);
  CHECK(rep.samples.size() == radii.size() * (angles.size() + 1));

  const auto tight = asymptote_check(P, radii, angles, 0.5);
  CHECK_FALSE(tight.pass);
  CHECK_FALSE(tight.failures.empty());

  CHECK_THROWS_AS(asymptote_check(P, radii, {0.0}), ConfigError);
  CHECK_THROWS_AS(asymptote_check(P, {3.0, 1.0}, angles), ConfigError);

  // far on the real axis and deep in the tunneling band
  CHECK(std::abs(reflection_coeff(1000.0 * P.cut_frequency(), P)) < 1e-4);
  CHECK(std::abs(std::abs(reflection_coeff(0.5 * P.cut_frequency(), P)) - 1.0) < 1e-12);
}
