#include <doctest.h>

#include <cmath>

#include "kgtx/analysis.hpp"
#include "oracles.hpp"

using namespace kgtx;

namespace {
const PhysicsParams P = PhysicsParams::make(1.0, 1.0, 5.0);
const InitialDatum D{Profile::bump(1.0, 1.5, 0.4), Profile()};
}  // namespace

TEST_CASE("support of simple fields") {
  const BranchGrid g(0.125, 33);
  BranchField f(g);
  CHECK(support_interval(f, 1e-8).empty);

  // indicator of [1, 2] on branch 1
  for (std::size_t i = 0; i < g.n(); ++i) f.u1[i] = (g.x(i) >= 1.0 && g.x(i) <= 2.0) ? 1.0 : 0.0;
  auto r = support_interval(f, 1e-8);
  CHECK_FALSE(r.empty);
  CHECK(r.x_min == 1.0);
  CHECK(r.x_max == 2.0);
  CHECK(r.tail_mass == 0.0);

  // a sample on branch 2 extends the hull to negative X
  f.u2[4] = 0.5;
  r = support_interval(f, 1e-8);
  CHECK(r.x_min == -0.5);
  CHECK_THROWS_AS(support_interval(f, 0.0), ConfigError);
}

TEST_CASE("support of the sampled bump and monotonicity in eps") {
  const double h = 1.0 / 512;
  const auto f = sample_datum(D, BranchGrid::covering(h, 3.0));
  const auto r = support_interval(f, 1e-8);
  CHECK(r.x_min >= 1.1 - h);
  CHECK(r.x_max <= 1.9 + h);
  CHECK(r.x_min <= 1.1 + 0.05);
  double prev_width = 1e9;
  for (double eps : {1e-10, 1e-8, 1e-6, 1e-3, 0.1, 0.5}) {
    const auto s = support_interval(f, eps);
    const double width = s.x_max - s.x_min;
    CHECK(width <= prev_width);
    prev_width = width;
  }
  // tail mass of a truncated hull matches the trapezoid sum outside it
  const auto s = support_interval(f, 0.5);
  double tail = 0.0;
  for (std::size_t i = 0; i < f.grid.n(); ++i)
    if (f.grid.x(i) < s.x_min || f.grid.x(i) > s.x_max) tail += h * f.u1[i] * f.u1[i];
  CHECK(s.tail_mass == doctest::Approx(tail).epsilon(1e-12));
}

TEST_CASE("causality of solver runs") {
  const double h = 1.0 / 512;
  const auto grid = BranchGrid::covering(h, 3.5);
  RunOptions o;
  o.scheme = Scheme::conserving;
  o.cfl = 1.0;
  o.limits.cfl_max = 1.0;
  o.snapshot_times = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (const auto& spec : {NonlinearitySpec::none(), NonlinearitySpec::cubic(1.0)}) {
    const auto tr = run(D, spec, P, grid, 1.0, o);
    const auto rep = causality_check(tr.snapshots, {1.1, 1.9}, P, 1e-8, 2 * h);
    CHECK(rep.pass);
    CHECK(rep.worst_excess == 0.0);
    CHECK(rep.wavefront_speed <= rep.speed_limit);
    CHECK(rep.wavefront_speed == doctest::Approx(1.0).epsilon(0.05));
    // nothing reaches X = 3 by t = 0.5
    const auto& half = tr.snapshots[2].field;
    CHECK(std::abs(half.u1[static_cast<std::size_t>(3.0 / h)]) <= 1e-6 * half.max_abs());
    for (const auto& s : tr.snapshots) CHECK(nonlinearity_preserves_support(s.field, spec, 1e-8));
  }
}

TEST_CASE("causality check flags a signal outside the cone") {
  const double h = 1.0 / 64;
  const auto grid = BranchGrid::covering(h, 4.0);
  auto f = sample_datum(D, grid);
  std::vector<Snapshot> snaps{{0.0, f}};
  CHECK(causality_check(snaps, {1.1, 1.9}, P, 1e-8, 2 * h).pass);
  f.u1[static_cast<std::size_t>(3.5 / h)] = 1e-3;
  snaps.push_back({0.5, f});
  const auto rep = causality_check(snaps, {1.1, 1.9}, P, 1e-8, 2 * h);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_excess == doctest::Approx(3.5 - (1.9 + 0.5 + 2 * h)));
  CHECK(rep.snapshots[1].outside_amplitude == doctest::Approx(1e-3));
  CHECK_THROWS_AS(causality_check(snaps, {1.1, 1.9}, P, 1e-8, h), ConfigError);
  CHECK_THROWS_AS(causality_check({}, {1.1, 1.9}, P, 1e-8, 2 * h), ConfigError);
}

TEST_CASE("a source with F(0) != 0 creates support") {
  const auto shifted = NonlinearitySpec::custom(
      "shifted", [](double u) { return u + 1.0; }, [](double) { return 1.0; }, [](double) { return 0.0; },
      [](double w) { return 0.5 * w * w + w; });
  const auto f = sample_datum(D, BranchGrid::covering(1.0 / 64, 3.0));
  CHECK_FALSE(nonlinearity_preserves_support(f, shifted, 1e-8));
  CHECK(nonlinearity_preserves_support(f, NonlinearitySpec::cubic(1.0), 1e-8));
}

TEST_CASE("discrete Sobolev norms of a bump") {
  const oracle::Bump b{1.0, 1.5, 0.4};
  const double h = 1.0 / 1024;
  std::vector<double> u;
  for (double x = 0.0; x <= 3.0 + 1e-12; x += h) u.push_back(b.f(x));
  const double l2 = oracle::simpson([&](double x) { return b.f(x) * b.f(x); }, 1.1, 1.9, 2000);
  const double d1 = oracle::simpson([&](double x) { return b.d1(x) * b.d1(x); }, 1.1, 1.9, 2000);
  const double d2 = oracle::simpson([&](double x) { return b.d2(x) * b.d2(x); }, 1.1, 1.9, 2000);
  CHECK(norm_h1(u, h) == doctest::Approx(std::sqrt(l2 + d1)).epsilon(1e-4));
  CHECK(norm_h2(u, h) == doctest::Approx(std::sqrt(l2 + d1 + d2)).epsilon(1e-3));
  CHECK(norm_h1(std::vector<double>(100, 0.0), h) == 0.0);
}

TEST_CASE("Lipschitz probe") {
  const auto spec = NonlinearitySpec::cubic(1.0);
  const double h = 1.0 / 512;
  const oracle::Bump b{0.8, 2.0, 0.5};
  std::vector<double> f;
  for (double x = 0.0; x <= 4.0 + 1e-12; x += h) f.push_back(b.f(x));
  const auto same = lipschitz_probe(spec, f, f, h);
  CHECK(same.lhs == 0.0);
  CHECK(same.pass);

  std::vector<double> g = f;
  for (double& v : g) v *= 1.1;
  const auto r = lipschitz_probe(spec, f, g, h);
  CHECK(r.pass);
  CHECK(r.lhs <= r.rhs);
  CHECK(r.ratio <= r.M + r.M_prime);
  CHECK(r.M == doctest::Approx(3.0 * 0.88 * 0.88).epsilon(1e-9));

  const auto a = lipschitz_audit(spec, 100, 42);
  CHECK(a.trials == 100);
  CHECK(a.passed == 100);
  CHECK(a.worst_ratio_fraction < 1.0);
  const auto again = lipschitz_audit(spec, 100, 42);
  CHECK(again.worst_ratio_fraction == a.worst_ratio_fraction);

  const auto singular = NonlinearitySpec::custom(
      "singular", [](double u) { return -u * std::abs(u); }, [](double u) { return 1.0 / u; },
      [](double) { return 0.0; }, [](double w) { return -std::abs(w * w * w) / 3.0; });
  CHECK_THROWS_AS(lipschitz_probe(singular, f, g, h), NumericalError);
}

TEST_CASE("exponential type of bump transforms") {
  const auto rays = pw_ray_samples({0.0, kPi / 4, kPi / 2, 3 * kPi / 4}, 20.0, 200.0, 40);
  for (double w : {0.4, 0.2, 0.1}) {
    const auto f = Profile::bump(1.0, 1.5, w);
    const auto rep = pw_bound_check(f, rays);
    CHECK(rep.R == doctest::Approx(1.5 + w));
    CHECK(rep.pass);
    CHECK(rep.fitted_type == doctest::Approx(rep.R).epsilon(0.1));
    CHECK(rep.real_axis_max <= rep.l1_norm);
  }
  // halving the support halves the type
  const auto a = pw_bound_check(Profile::bump(1.0, 1.2, 0.4), rays);
  const auto b = pw_bound_check(Profile::bump(1.0, 0.6, 0.2), rays);
  CHECK(b.fitted_type / a.fitted_type == doctest::Approx(0.5).epsilon(0.1));

  // upper imaginary axis against direct integration: |Ff(i eta)| <= e^{R eta} int|f|
  const oracle::Bump ob{1.0, 1.5, 0.4};
  const ProfileTransform tr(Profile::bump(1.0, 1.5, 0.4), 100.0);
  for (double eta : {1.0, 5.0, 20.0}) {
    const double direct = oracle::simpson([&](double x) { return ob.f(x) * std::exp(eta * x); }, 1.1, 1.9, 4000);
    CHECK(std::abs(tr.fourier(Complex(0, eta))) == doctest::Approx(direct).epsilon(1e-5));
    CHECK(direct <= std::exp(1.9 * eta) * 0.4 * 32.0 / 35.0);
  }
  CHECK_THROWS_AS(pw_bound_check(Profile::bump(1.0, 1.5, 0.4), {Complex(1.0, -1.0)}), ConfigError);
  CHECK_THROWS_AS(pw_ray_samples({0.1}, 0.0, 1.0, 5), ConfigError);
}
