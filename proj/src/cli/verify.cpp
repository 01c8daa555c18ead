#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "output.hpp"

namespace kgtx {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult at_most(const std::string& name, double value, double threshold) {
  return {name, value <= threshold, value, threshold};
}

// Piecewise form of sqrt(c^2 w^2 - k^2) on the real line.
Complex s_piecewise(double w, const PhysicsParams& p) {
  const double cw = p.c() * w, k = p.k();
  if (cw >= k) return {std::sqrt(cw * cw - k * k), 0.0};
  if (cw <= -k) return {-std::sqrt(cw * cw - k * k), 0.0};
  return {0.0, std::sqrt(k * k - cw * cw)};
}

double relative_l2(const BranchField& a, const BranchField& b) {
  double num = 0.0, den = 0.0;
  for (int k = 1; k <= 2; ++k) {
    for (std::size_t i = 0; i < a.grid.n(); ++i) {
      const double w = (i == 0 || i + 1 == a.grid.n()) ? 0.5 : 1.0;
      const double d = a.branch(k)[i] - b.branch(k)[i];
      num += w * d * d;
      den += w * b.branch(k)[i] * b.branch(k)[i];
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double energy_drift(const Trajectory& tr) {
  if (tr.energy.empty()) return 0.0;
  const double E0 = tr.energy.front().total;
  double d = 0.0;
  for (const EnergyReport& e : tr.energy) d = std::max(d, std::abs(e.total - E0));
  return E0 > 0.0 ? d / E0 : d;
}

}  // namespace

CommandOutput cmd_verify(const RunConfig& cfg, const fs::path& dir) {
  const auto t_start = Clock::now();
  fs::create_directories(dir);
  const PhysicsParams params = cfg.physics();
  const InitialDatum datum = cfg.datum();
  const NonlinearitySpec spec = cfg.nonlinearity_spec();
  const BranchGrid grid = cfg.grid();
  const double kc = params.cut_frequency();
  std::mt19937_64 rng(cfg.seed);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };

  CommandOutput res;
  auto& checks = res.checks;
  std::vector<std::pair<std::string, double>> timings;
  auto t0 = Clock::now();

  // Dispersion relations on the real line and in the upper half-plane.
  {
    double piece = 0.0, unit = 0.0, ident = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double w = -3.0 * kc + 6.0 * kc * (i + 0.5) / 1000.0;
      piece = std::max(piece, std::abs(s_composite(w, params) - s_piecewise(w, params)));
      const Complex r = reflection_coeff(w, params), t = transmission_coeff(w, params);
      ident = std::max(ident, std::abs(r + 1.0 - t));
      if (std::abs(w) < kc) unit = std::max(unit, std::abs(std::abs(r) - 1.0));
    }
    checks.push_back(at_most("dispersion_piecewise", piece, 1e-12));
    checks.push_back(at_most("dispersion_unit_modulus", unit, 1e-12));
    checks.push_back(at_most("dispersion_identity", ident, 1e-12));
    std::vector<double> radii;
    for (int i = 0; i <= 30; ++i) radii.push_back(0.1 * kc * std::pow(1e4, i / 30.0));
    const AsymptoteReport ar = asymptote_check(params, radii, {kPi / 6, kPi / 2, 5 * kPi / 6});
    checks.push_back({"dispersion_asymptote", ar.pass, ar.max_modulus, ar.bound});
  }
  timings.emplace_back("dispersion_seconds", seconds_since(t0));

  // Admissibility of the configured nonlinearity.
  const ValidationResult adm = validate_nonlinearity(spec);
  checks.push_back({"admissibility", adm.ok, adm.ok ? 0.0 : 1.0, 0.0});

  // Spectral evaluators: initial data, mutual agreement, FD cross-check.
  t0 = Clock::now();
  {
    SpectralConfig sc;
    sc.tolerance = cfg.spectral_tolerance;
    sc.t_max = cfg.T;
    sc.x_max = grid.extent();
    const SpectralSolver solver(params, datum, sc);
    double e4 = 0.0, e5 = 0.0, nf = 0.0;
    // Every fourth grid point: each point costs a full pass over the frequency nodes.
    for (std::size_t i = 1; i < grid.n(); i += 4) {
      const double x = grid.x(i), f = datum.f1(x);
      const double d4 = solver.u1_frequency(0.0, x) - f, d5 = solver.u1_wavenumber(0.0, x) - f;
      e4 += d4 * d4;
      e5 += d5 * d5;
      nf += f * f;
    }
    checks.push_back(at_most("spectral_initial_frequency_form", std::sqrt(e4 / nf), 1e-3));
    checks.push_back(at_most("spectral_initial_wavenumber_form", std::sqrt(e5 / nf), 1e-3));
    double diff = 0.0;
    const auto [lo, hi] = datum.f1.support();
    (void)lo;
    for (int i = 0; i < 100; ++i) {
      const double t = uniform(0.0, cfg.T);
      const double x = uniform(0.0, std::min(grid.extent(), hi + params.c() * cfg.T));
      diff = std::max(diff, std::abs(solver.u1_frequency(t, x) - solver.u1_wavenumber(t, x)));
    }
    checks.push_back(at_most("spectral_forms_agree", diff, 1e-6 * datum.f1.amplitude_bound()));
    timings.emplace_back("spectral_seconds", seconds_since(t0));

    t0 = Clock::now();
    RunOptions lin = cfg.run_options();
    lin.scheme = Scheme::leapfrog;
    lin.snapshot_times = {cfg.T};
    const Trajectory tr = run(datum, NonlinearitySpec::none(), params, grid, cfg.T, lin);
    const BranchField ref = solver.sample(cfg.T, grid);
    checks.push_back(at_most("fd_vs_spectral", relative_l2(tr.snapshots.back().field, ref),
                             cfg.l2_tolerance));
    timings.emplace_back("cross_validation_seconds", seconds_since(t0));
  }

  // Energy in both schemes with the configured nonlinearity.
  t0 = Clock::now();
  RunOptions ro = cfg.run_options();
  ro.snapshot_times.clear();
  ro.scheme = Scheme::leapfrog;
  const Trajectory lf = run(datum, spec, params, grid, cfg.T, ro);
  ro.scheme = Scheme::conserving;
  const Trajectory cons = run(datum, spec, params, grid, cfg.T, ro);
  checks.push_back(at_most("energy_leapfrog", energy_drift(lf), cfg.energy_tolerance));
  checks.push_back(at_most("energy_conserving", energy_drift(cons), cfg.conserving_energy_tolerance));
  double norm = 0.0;
  bool nl_nonneg = true;
  for (const Trajectory* tr : {&lf, &cons}) {
    const double E0 = tr->energy.front().total;
    for (const EnergyReport& e : tr->energy) {
      norm = std::max(norm, E0 > 0.0 ? half_norm_squared(e) / E0 : 0.0);
      nl_nonneg = nl_nonneg && e.nonlinear >= 0.0;
    }
  }
  checks.push_back(at_most("norm_bound", norm, 1.0 + cfg.norm_tolerance));
  if (adm.ok) checks.push_back({"nonlinear_energy_nonnegative", nl_nonneg, nl_nonneg ? 0.0 : 1.0, 0.0});
  timings.emplace_back("energy_seconds", seconds_since(t0));

  // Light cone, for the linear and the configured problem. At c dt = h the
  // discrete domain of dependence is the cone itself.
  t0 = Clock::now();
  {
    RunOptions co;
    co.scheme = Scheme::conserving;
    co.cfl = cfg.causality_cfl;
    co.limits.cfl_max = std::max(co.limits.cfl_max, cfg.causality_cfl);
    co.snapshot_times = cfg.snapshots;
    co.allow_inadmissible = cfg.allow_inadmissible;
    const auto sigma = datum.f1.support();
    const Trajectory tl = run(datum, NonlinearitySpec::none(), params, grid, cfg.T, co);
    const Trajectory tn = run(datum, spec, params, grid, cfg.T, co);
    const CausalityReport cl = causality_check(tl.snapshots, sigma, params, cfg.eps_rel, cfg.delta,
                                               cfg.outside_tolerance);
    const CausalityReport cn = causality_check(tn.snapshots, sigma, params, cfg.eps_rel, cfg.delta,
                                               cfg.outside_tolerance);
    auto worst_outside = [](const CausalityReport& r) {
      double m = 0.0;
      for (const ConeCheck& c : r.snapshots) m = std::max(m, c.outside_amplitude);
      return m;
    };
    checks.push_back({"causality_linear", cl.pass, worst_outside(cl), cfg.outside_tolerance});
    checks.push_back({"causality_nonlinear", cn.pass, worst_outside(cn), cfg.outside_tolerance});
    checks.push_back(at_most("wavefront_speed", std::max(cl.wavefront_speed, cn.wavefront_speed),
                             cl.speed_limit));
    bool preserved = true;
    for (const Snapshot& s : tn.snapshots)
      preserved = preserved && nonlinearity_preserves_support(s.field, spec, cfg.eps_rel);
    checks.push_back({"support_preserved", preserved, preserved ? 0.0 : 1.0, 0.0});
  }
  timings.emplace_back("causality_seconds", seconds_since(t0));

  // Lipschitz audit with a cubic F.
  t0 = Clock::now();
  {
    const NonlinearitySpec cubic =
        spec.name == "cubic" && spec.lambda != 0.0 ? spec : NonlinearitySpec::cubic(1.0);
    const LipschitzAudit a = lipschitz_audit(cubic, cfg.lipschitz_pairs, cfg.seed);
    checks.push_back({"lipschitz_audit", a.passed == a.trials, static_cast<double>(a.passed),
                      static_cast<double>(a.trials)});
  }
  timings.emplace_back("lipschitz_seconds", seconds_since(t0));

  // Exponential type of the transform of f1.
  t0 = Clock::now();
  {
    const PwReport pw = pw_bound_check(datum.f1, pw_ray_samples({0.0, kPi / 4, kPi / 2, 3 * kPi / 4},
                                                                20.0, 200.0, 40));
    const double rel = std::abs(pw.fitted_type - pw.R) / pw.R;
    checks.push_back({"paley_wiener_type", pw.pass && rel <= 0.1, rel, 0.1});
  }
  timings.emplace_back("paley_wiener_seconds", seconds_since(t0));

  out::write_checks(dir / "checks.csv", checks);
  out::write_coefficients(dir / "coefficients.csv", params, [&] {
    std::vector<double> w(801);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 8.0 * kc * i / 800.0;
    return w;
  }());
  out::write_energy(dir / "energy_leapfrog.csv", lf.energy);
  out::write_energy(dir / "energy_conserving.csv", cons.energy);
  res.files = {"checks.csv", "coefficients.csv", "energy_leapfrog.csv", "energy_conserving.csv"};
  out::write_metadata(dir, {"verify", &cfg, checks, lf.override_used, res.files});
  timings.emplace_back("total_seconds", seconds_since(t_start));
  out::write_timings(dir, timings);
  res.exit_code = 0;
  for (const CheckResult& c : checks)
    if (!c.pass) res.exit_code = 1;
  return res;
}

}  // namespace kgtx
