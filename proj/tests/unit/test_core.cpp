#include <doctest.h>

#include <cmath>
#include <random>

#include "kgtx/core.hpp"
#include "kgtx/fourier.hpp"
#include "kgtx/quadrature.hpp"
#include "oracles.hpp"

using namespace kgtx;

TEST_CASE("branch_sqrt examples") {
  const double cut = -kPi / 2;
  CHECK(std::abs(branch_sqrt(1.0, cut) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(branch_sqrt(-1.0, cut) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(branch_sqrt(4.0, cut) - Complex(2, 0)) < 1e-15);
  CHECK(branch_sqrt(0.0, cut) == Complex(0, 0));
  // -i sits on the cut and takes the value at the start of the window
  CHECK(std::abs(branch_sqrt(Complex(0, -1), cut) - std::polar(1.0, -kPi / 4)) < 1e-15);
}

TEST_CASE("branch_sqrt squares back and stays in its half-plane") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  const double cut = -kPi / 2;
  for (int i = 0; i < 10000; ++i) {
    const Complex z(u(rng), u(rng));
    const Complex r = branch_sqrt(z, cut);
    CHECK(std::abs(r * r - z) <= 1e-12 * std::abs(z));
    const double arg = std::arg(r);
    CHECK(arg >= cut / 2 - 1e-15);
    CHECK(arg < cut / 2 + kPi + 1e-15);
  }
}

TEST_CASE("branch_sqrt is continuous off the downward ray and jumps across it") {
  const double cut = -kPi / 2;
  const double eps = 1e-10;
  for (double x : {0.5, 3.0, 40.0}) {
    CHECK(std::abs(branch_sqrt({x, eps}, cut) - branch_sqrt({x, -eps}, cut)) < 1e-6);
    CHECK(std::abs(branch_sqrt({-x, eps}, cut) - branch_sqrt({-x, -eps}, cut)) < 1e-6);
    const double jump = std::abs(branch_sqrt({eps, -x}, cut) - branch_sqrt({-eps, -x}, cut));
    CHECK(jump == doctest::Approx(2.0 * std::sqrt(x)).epsilon(1e-6));
  }
}

TEST_CASE("physics parameters") {
  const auto p = PhysicsParams::make(2.0, 1.0, 5.0);
  CHECK(p.k() == doctest::Approx(2.0));
  CHECK(p.cut_frequency() == doctest::Approx(1.0));
  CHECK(p.a(1) == 1.0);
  CHECK(p.a(2) == 5.0);
  CHECK_THROWS_AS(PhysicsParams::make(1.0, 2.0, 2.0), ConfigError);
  CHECK_THROWS_WITH(PhysicsParams::make(1.0, 3.0, 2.0), "a2 must exceed a1");
  CHECK_THROWS_AS(PhysicsParams::make(0.0, 1.0, 2.0), ConfigError);
  CHECK_THROWS_AS(PhysicsParams::make(1.0, 0.0, 2.0), ConfigError);
  CHECK_NOTHROW(PhysicsParams::make_flat(1.0, 2.0, 2.0));
  CHECK(PhysicsParams::make_flat(1.0, 2.0, 2.0).k() == 0.0);
}

TEST_CASE("branch grid and field") {
  CHECK_THROWS_AS(BranchGrid(0.1, 2), ConfigError);
  CHECK_THROWS_AS(BranchGrid(-0.1, 10), ConfigError);
  const auto g = BranchGrid::covering(0.25, 2.0);
  CHECK(g.n() == 9);
  CHECK(g.extent() == 2.0);
  CHECK(BranchGrid::global(1, 0.5) == 0.5);
  CHECK(BranchGrid::global(2, 0.5) == -0.5);

  BranchField f(g);
  CHECK(f.max_abs() == 0.0);
  CHECK(f.flux_residual() == 0.0);
  // u = |X| near the node: both one-sided slopes are +1
  for (std::size_t i = 0; i < g.n(); ++i) f.u1[i] = f.u2[i] = g.x(i);
  CHECK(f.node_mismatch() == 0.0);
  CHECK(f.flux_residual() == doctest::Approx(2.0));
  // u = X is smooth across the node: slopes cancel
  for (std::size_t i = 0; i < g.n(); ++i) f.u2[i] = -g.x(i);
  CHECK(std::abs(f.flux_residual()) < 1e-14);
}

namespace {
GridFunction sampled_bump(const oracle::Bump& b, double x0, double dx, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = b.f(x0 + i * dx);
  return GridFunction::sample_real(x0, dx, v);
}
}  // namespace

TEST_CASE("Fourier transform of zero is zero") {
  GridFunction f{-1.0, 0.01, std::vector<Complex>(256)};
  const auto g = fourier_forward(f);
  for (auto v : g.values) CHECK(v == Complex(0, 0));
}

TEST_CASE("Fourier transform matches the closed form of a bump") {
  const oracle::Bump b{1.3, 0.7, 0.5};
  const auto f = sampled_bump(b, -4.0, 8.0 / 4096, 4096);
  const auto g = fourier_forward(f);
  // only aliasing from omega -/+ 2 pi/dx remains; bound it by the closed form
  const double wrap = 2.0 * kPi / f.dx;
  for (std::size_t j = 0; j < g.size(); j += 7) {
    const double w = std::abs(g.omega(j));
    const double alias = 2.0 * 96.0 * b.A * b.w / std::pow((wrap - w) * b.w, 4);
    CHECK(std::abs(g.values[j] - b.transform(g.omega(j))) <= alias + 1e-13);
  }
}

TEST_CASE("Fourier round trip and Parseval") {
  const oracle::Bump b{1.0, 0.3, 0.8};
  const std::size_t n = 1 << 12;
  const double dx = 6.0 / n;
  const auto f = sampled_bump(b, -3.0, dx, n);
  const auto g = fourier_forward(f);
  const auto back = fourier_inverse(g);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += std::norm(back.values[i] - f.values[i]);
    den += std::norm(f.values[i]);
  }
  CHECK(std::sqrt(num / den) <= 1e-10);

  double ex = 0.0, ew = 0.0;
  for (auto v : f.values) ex += std::norm(v) * dx;
  for (auto v : g.values) ew += std::norm(v) * g.domega() / (2.0 * kPi);
  CHECK(ew == doctest::Approx(ex).epsilon(1e-12));
}

TEST_CASE("Fourier sampling errors") {
  const oracle::Bump b{1.0, 0.0, 1.0};
  CHECK_THROWS_AS(fourier_forward(sampled_bump(b, -0.5, 0.01, 100)), WindowError);
  CHECK_THROWS_AS(fourier_forward(sampled_bump(b, -2.0, 0.01, 401)), WindowError);
}

TEST_CASE("panel quadrature") {
  const std::vector<double> br{0.0};
  SUBCASE("zero integrand") {
    const auto r = quad_panels([](double) { return Complex{}; }, br, 10.0);
    CHECK(r.value == Complex(0, 0));
  }
  SUBCASE("polynomial") {
    const auto r = quad_panels([](double w) { return Complex(w, 0); }, br, 1.0);
    CHECK(std::abs(r.value - 0.5) < 1e-13);
  }
  SUBCASE("exponential over a long interval") {
    const auto r = quad_panels([](double w) { return Complex(std::exp(-w), 0); }, br, 50.0);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
  }
  SUBCASE("inverse square root at a breakpoint") {
    const std::vector<double> b2{0.0, 1.0};
    const auto r = quad_panels(
        [](double w) { return Complex(w < 1.0 ? 1.0 / std::sqrt(1.0 - w) : 0.0, 0); }, b2, 1.0);
    CHECK(std::abs(r.value - 2.0) < 1e-9);
  }
  SUBCASE("oscillatory") {
    QuadOptions o;
    o.max_panel_width = 0.25;
    const auto r = quad_panels([](double w) { return std::polar(1.0, 40.0 * w); }, br, 3.0, o);
    const Complex exact = (std::polar(1.0, 120.0) - 1.0) / Complex(0, 40);
    CHECK(std::abs(r.value - exact) < 1e-12);
  }
  SUBCASE("non-finite integrand names the frequency") {
    CHECK_THROWS_AS(quad_panels([](double w) { return Complex(1.0 / (w - w), 0); }, br, 1.0),
                    QuadratureError);
  }
}
