#include <doctest.h>

#include <cmath>
#include <random>

#include "kgtx/nlsolver.hpp"
#include "kgtx/spectral.hpp"
#include "oracles.hpp"

using namespace kgtx;

namespace {
const PhysicsParams P = PhysicsParams::make(1.0, 1.0, 5.0);

InitialDatum reference_datum() { return {Profile::bump(1.0, 1.5, 0.4), Profile()}; }

GridFunction sample_line(const std::function<double(double)>& f, double x0, double dx, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(x0 + i * dx);
  return GridFunction::sample_real(x0, dx, v);
}
}  // namespace

TEST_CASE("profiles") {
  const auto p = Profile::bump(2.0, 1.0, 0.5);
  CHECK(p(1.0) == 2.0);
  CHECK(p(1.5) == 0.0);
  CHECK(p(0.4) == 0.0);
  CHECK(p(1.25) == doctest::Approx(2.0 * std::pow(0.75, 3)));
  CHECK(p.support() == std::pair{0.5, 1.5});
  const auto q = p.plus(Profile::bump(-1.0, 3.0, 0.2));
  CHECK(q.support() == std::pair{0.5, 3.2});
  CHECK(q.amplitude_bound() == 3.0);
  CHECK(p.scaled(0.5)(1.0) == 1.0);
  CHECK(Profile().is_zero());
  CHECK(Profile()(1.0) == 0.0);
  CHECK_THROWS_AS(Profile::bump(1.0, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS((InitialDatum{Profile::bump(1.0, 0.3, 0.4), Profile()}.validate()), ConfigError);
  CHECK_NOTHROW(reference_datum().validate());
}

TEST_CASE("profile transform matches the closed-form bump transform") {
  // The rectangle rule errs by the aliased spectrum at 2 pi/dx -/+ q, which
  // the closed form bounds by 96 A w / beta^4 each.
  const oracle::Bump b{1.0, 1.5, 0.4};
  const ProfileTransform tr(Profile::bump(1.0, 1.5, 0.4), 400.0);
  const double wrap = 2.0 * oracle::pi / tr.spacing();
  for (double q : {0.0, 0.3, 1.0, 7.5, 40.0, 123.0, 399.0}) {
    const double alias = 2.0 * 96.0 * b.A * b.w / std::pow((wrap - q) * b.w, 4);
    CHECK(std::abs(tr.fourier(q) - b.transform(q)) <= alias + 1e-14);
  }
  // laplace with a real exponent against Simpson
  const double exact = oracle::simpson([&](double x) { return b.f(x) * std::exp(-2.0 * (x - 1.9)); },
                                       1.1, 1.9, 4000);
  CHECK(std::abs(tr.laplace(2.0, 1.9) - exact) < 1e-8 * exact);
}

TEST_CASE("zero data give the zero solution") {
  const SpectralSolver s(P, InitialDatum{});
  CHECK(s.u1_wavenumber(0.5, 1.0) == 0.0);
  CHECK(s.u2_wavenumber(0.5, 1.0) == 0.0);
  CHECK(s.u1_frequency(0.5, 1.0) == 0.0);
  const auto f = s.sample(0.5, BranchGrid(0.01, 101));
  CHECK(f.max_abs() == 0.0);
}

TEST_CASE("both representations reproduce the datum at t = 0") {
  const auto d = reference_datum();
  const SpectralSolver s(P, d, {.t_max = 1.0, .x_max = 3.0});
  double w5 = 0.0, w4 = 0.0;
  for (double x = 0.0; x <= 3.0; x += 1.0 / 64) {
    w5 = std::max(w5, std::abs(s.u1_wavenumber(0.0, x) - d.f1(x)));
    w4 = std::max(w4, std::abs(s.u1_frequency(0.0, x) - d.f1(x)));
    CHECK(std::abs(s.u2_wavenumber(0.0, x)) < 1e-6);
  }
  CHECK(w5 < 1e-6);
  CHECK(w4 < 1e-6);
}

TEST_CASE("the two representations agree at random points") {
  const SpectralSolver s(P, reference_datum(), {.t_max = 1.0, .x_max = 3.0});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.0, 1.0), ux(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng), x = ux(rng);
    CHECK(std::abs(s.u1_frequency(t, x) - s.u1_wavenumber(t, x)) < 1e-6);
  }
  CHECK_THROWS_AS(s.u1_wavenumber(1.5, 1.0), ConfigError);
  CHECK_THROWS_AS(s.u1_frequency(0.5, -0.1), ConfigError);
}

TEST_CASE("grid sampling matches pointwise evaluation and is continuous") {
  const SpectralSolver s(P, reference_datum(), {.t_max = 1.0, .x_max = 3.0});
  const BranchGrid g(1.0 / 128, 385);
  const auto f = s.sample(0.8, g);
  CHECK(f.node_mismatch() == 0.0);
  for (std::size_t i = 0; i < g.n(); i += 37) {
    CHECK(std::abs(f.u1[i] - s.u1_wavenumber(0.8, g.x(i))) < 1e-10);
    if (i > 0) CHECK(std::abs(f.u2[i] - s.u2_wavenumber(0.8, g.x(i))) < 1e-10);
  }
}

TEST_CASE("linearity in the datum") {
  const Profile f = Profile::bump(1.0, 1.5, 0.4), g = Profile::bump(-0.7, 2.2, 0.3);
  // A shared cutoff puts every solver on the same nodes.
  const SpectralConfig cfg{.q_max = 3000.0, .t_max = 1.0, .x_max = 3.0};
  const SpectralSolver sf(P, {f, {}}, cfg), sg(P, {g, {}}, cfg), sfg(P, {f.plus(g), {}}, cfg),
      s2(P, {f.scaled(2.5), {}}, cfg);
  const BranchGrid grid(1.0 / 64, 193);
  const auto a = sf.sample(0.7, grid), b = sg.sample(0.7, grid), ab = sfg.sample(0.7, grid),
             a2 = s2.sample(0.7, grid);
  const double scale = ab.max_abs();
  for (std::size_t i = 0; i < grid.n(); ++i) {
    CHECK(std::abs(ab.u1[i] - a.u1[i] - b.u1[i]) <= 1e-10 * scale);
    CHECK(std::abs(ab.u2[i] - a.u2[i] - b.u2[i]) <= 1e-10 * scale);
    CHECK(std::abs(a2.u1[i] - 2.5 * a.u1[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("equal coefficients reduce to the full-line solution") {
  const auto flat = PhysicsParams::make_flat(1.0, 2.0, 2.0);
  const auto d = reference_datum();
  const SpectralSolver s(flat, d, {.t_max = 1.0, .x_max = 3.0});
  const double h = 1.0 / 256;
  const auto line = kg_fullline_propagate(sample_line([&](double x) { return x > 0 ? d.f1(x) : 0.0; },
                                                      -4.0, h, 2048),
                                          1.0, 2.0, 1.0);
  const BranchGrid g(h, 769);
  const auto u = s.sample(1.0, g);
  std::vector<double> a, b;
  for (std::size_t i = 0; i < g.n(); ++i) {
    a.push_back(u.u1[i]);
    b.push_back(line.values[1024 + i].real());
    a.push_back(u.u2[i]);
    b.push_back(line.values[1024 - i].real());
  }
  CHECK(oracle::rel_l2(a, b) <= 1e-3);
  CHECK(std::abs(reflection_coeff(1.7, flat)) < 1e-15);
}

TEST_CASE("full-line propagation") {
  const oracle::Bump b{1.0, 0.0, 1.0};
  const double dx = 10.0 / 4096;
  const auto f = sample_line([&](double x) { return b.f(x); }, -5.0, dx, 4096);

  SUBCASE("t = 0 is the identity") {
    const auto u = kg_fullline_propagate(f, 0.0, 1.0, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(u.values[i] - f.values[i]) < 1e-13);
  }
  SUBCASE("massless case is d'Alembert") {
    const auto u = kg_fullline_propagate(f, 1.5, 0.0, 1.3);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(u.values[i].real() -
                                       oracle::dalembert([&](double x) { return b.f(x); }, f.x(i), 1.5, 1.3)));
    CHECK(worst <= 1e-8);
  }
  SUBCASE("energy is constant") {
    const double a = 2.0, c = 1.0;
    auto energy = [&](double t) {
      const auto st = kg_fullline_evolve(f, t, a, c);
      const auto& u = st.u.values;
      double e = 0.0;
      for (std::size_t i = 2; i + 2 < u.size(); ++i) {
        const double ux =
            (-u[i + 2].real() + 8 * u[i + 1].real() - 8 * u[i - 1].real() + u[i - 2].real()) / (12 * dx);
        e += 0.5 * (std::norm(st.ut.values[i]) + c * c * ux * ux + a * std::norm(u[i])) * dx;
      }
      return e;
    };
    const double e0 = energy(0.0);
    for (double t : {0.5, 1.3, 2.9}) CHECK(std::abs(energy(t) - e0) <= 1e-8 * e0);
  }
  SUBCASE("window too small") {
    CHECK_THROWS_AS(kg_fullline_propagate(f, 4.5, 1.0, 1.0), WindowError);
  }
}

TEST_CASE("the linear solution stays inside the light cone") {
  const auto d = reference_datum();
  const SpectralSolver s(P, d, {.tolerance = 1e-8, .t_max = 1.0, .x_max = 3.5});
  const double h = 1.0 / 256;
  const BranchGrid g(h, 897);
  for (double t : {0.25, 0.5, 1.0}) {
    const auto u = s.sample(t, g);
    const double peak = u.max_abs(), lo = 1.1 - t - 2 * h, hi = 1.9 + t + 2 * h;
    double outside = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      if (g.x(i) < lo || g.x(i) > hi) outside = std::max(outside, std::abs(u.u1[i]));
      if (-g.x(i) < lo) outside = std::max(outside, std::abs(u.u2[i]));
    }
    CHECK(outside <= 1e-6 * peak);
  }
}

TEST_CASE("evanescent decay of a tunneling packet") {
  // Carrier q0 = 1 lies in the tunneling band (k/c = 2); the time-integrated
  // intensity in branch 2 then decays like exp(-2 x sqrt(k^2 - c^2 q0^2)/c).
  const double q0 = 1.0;
  const InitialDatum d{Profile::bump(1.0, 17.0, 16.0, q0), Profile()};
  const SpectralSolver s(P, d, {.t_max = 70.0, .x_max = 1.6});
  std::vector<double> xs, logs;
  for (double x = 0.2; x <= 1.01; x += 0.1) {
    double intensity = 0.0;
    for (double t = 0.0; t <= 70.0; t += 0.2) intensity += std::pow(s.u2_wavenumber(t, x), 2);
    xs.push_back(x);
    logs.push_back(std::log(intensity));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += logs[i];
  mx /= xs.size();
  my /= xs.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (logs[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double expected = -2.0 * std::sqrt(4.0 - q0 * q0);
  MESSAGE("fitted log-intensity slope " << sxy / sxx << ", expected " << expected);
  CHECK(sxy / sxx == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("frequency form with data on both branches against finite differences") {
  const InitialDatum d{Profile::bump(1.0, 1.5, 0.4), Profile::bump(0.8, 0.6, 0.4)};
  const SpectralSolver s(P, d, {.t_max = 1.0, .x_max = 3.0});
  CHECK_THROWS_AS(s.u1_wavenumber(0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(s.sample(0.5, BranchGrid(0.1, 10)), ConfigError);
  const auto grid = BranchGrid::covering(1.0 / 512, 4.0);
  RunOptions opts;
  opts.snapshot_times = {1.0};
  const auto tr = run(d, NonlinearitySpec::none(), P, grid, 1.0, opts);
  const auto& u = tr.snapshots.back().field;
  std::vector<double> a, b;
  for (std::size_t i = 0; grid.x(i) <= 3.0; i += 8) {
    a.push_back(u.u1[i]);
    b.push_back(s.u1_frequency(1.0, grid.x(i)));
  }
  CHECK(oracle::rel_l2(a, b) <= 1e-3);
}
