#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "output.hpp"

namespace kgtx {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int exit_code_for(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    if (!c.pass) return 1;
  return 0;
}

void prepare(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::vector<double> coefficient_frequencies(const PhysicsParams& p) {
  // 801 samples over [0, 8 k/c]: the tunneling band, its edge, and the decay.
  std::vector<double> w(801);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 8.0 * p.cut_frequency() * i / 800.0;
  return w;
}

}  // namespace

CommandOutput cmd_simulate(const RunConfig& cfg, const fs::path& dir) {
  if (cfg.mode == "spectral-linear") return cmd_linear_spectral(cfg, dir);
  const auto t0 = Clock::now();
  prepare(dir);
  const PhysicsParams params = cfg.physics();
  const NonlinearitySpec spec = cfg.nonlinearity_spec();
  const Trajectory tr = run(cfg.datum(), spec, params, cfg.grid(), cfg.T, cfg.run_options());
  const double t_run = seconds_since(t0);

  CommandOutput res;
  const double E0 = tr.energy.empty() ? 0.0 : tr.energy.front().total;
  double drift = 0.0, norm = 0.0, peak = 0.0;
  for (const EnergyReport& e : tr.energy) {
    drift = std::max(drift, std::abs(e.total - E0));
    norm = std::max(norm, half_norm_squared(e));
  }
  for (const Snapshot& s : tr.snapshots) peak = std::max(peak, s.field.max_abs());
  if (E0 > 0.0) {
    drift /= E0;
    norm /= E0;
  }
  const double tol = cfg.scheme() == Scheme::conserving ? cfg.conserving_energy_tolerance
                                                        : cfg.energy_tolerance;
  res.checks.push_back({"energy_drift", drift <= tol, drift, tol});
  res.checks.push_back({"norm_bound", norm <= 1.0 + cfg.norm_tolerance, norm, 1.0 + cfg.norm_tolerance});
  res.stats = {{"E0", E0},
               {"E_final", tr.energy.empty() ? 0.0 : tr.energy.back().total},
               {"energy_drift", drift},
               {"max_abs_u", peak}};

  out::write_fields(dir / "fields.csv", tr.snapshots);
  out::write_energy(dir / "energy.csv", tr.energy);
  res.files = {"fields.csv", "energy.csv"};
  out::write_metadata(dir, {"simulate", &cfg, res.checks, tr.override_used, res.files});
  out::write_timings(dir, {{"run_seconds", t_run}, {"total_seconds", seconds_since(t0)}});
  res.exit_code = exit_code_for(res.checks);
  return res;
}

CommandOutput cmd_linear_spectral(const RunConfig& cfg, const fs::path& dir) {
  if (cfg.nonlinearity != "none")
    throw ConfigError("linear-spectral requires nonlinearity = none");
  const auto t0 = Clock::now();
  prepare(dir);
  const PhysicsParams params = cfg.physics();
  const BranchGrid grid = cfg.grid();
  SpectralConfig sc;
  sc.tolerance = cfg.spectral_tolerance;
  sc.t_max = cfg.T;
  sc.x_max = grid.extent();
  const SpectralSolver solver(params, cfg.datum(), sc);
  std::vector<Snapshot> snaps;
  for (double t : cfg.snapshots) snaps.push_back({t, solver.sample(t, grid)});
  const double t_eval = seconds_since(t0);

  CommandOutput res;
  const double peak = cfg.datum().f1.amplitude_bound();
  const double tail_tol = cfg.spectral_tolerance * peak;
  res.checks.push_back({"tail_bound", solver.tail_bound() <= tail_tol || peak == 0.0,
                        solver.tail_bound(), tail_tol});
  res.stats = {{"q_max", solver.q_max()}, {"tail_bound", solver.tail_bound()}};

  out::write_fields(dir / "fields.csv", snaps);
  out::write_coefficients(dir / "coefficients.csv", params, coefficient_frequencies(params));
  res.files = {"fields.csv", "coefficients.csv"};
  out::write_metadata(dir, {"linear-spectral", &cfg, res.checks, false, res.files});
  out::write_timings(dir, {{"evaluation_seconds", t_eval}, {"total_seconds", seconds_since(t0)}});
  res.exit_code = exit_code_for(res.checks);
  return res;
}

CommandOutput cmd_sweep(const RunConfig& cfg, const fs::path& dir, int jobs) {
  if (cfg.sweep.empty()) throw ConfigError("sweep needs at least one 'sweep.<key> = v1, v2' line");
  if (jobs < 1) throw ConfigError("--jobs must be at least 1");
  const auto t0 = Clock::now();
  prepare(dir);

  // Cartesian product; the first axis varies slowest.
  std::vector<std::vector<std::string>> cells{{}};
  for (const SweepAxis& axis : cfg.sweep) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : cells)
      for (const std::string& v : axis.values) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    cells = std::move(next);
  }
  auto cell_name = [](std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "cell_%04zu", i);
    return std::string(buf);
  };
  auto cell_label = [&](std::size_t i) {
    std::string s = cell_name(i) + " (";
    for (std::size_t a = 0; a < cfg.sweep.size(); ++a)
      s += (a ? ", " : "") + cfg.sweep[a].key + "=" + cells[i][a];
    return s + ")";
  };

  // Validate every cell before running any.
  std::vector<RunConfig> configs;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    RunConfig c = cfg;
    try {
      for (std::size_t a = 0; a < cfg.sweep.size(); ++a) c = with_value(c, cfg.sweep[a].key, cells[i][a]);
    } catch (const ConfigError& e) {
      throw ConfigError(cell_label(i) + ": " + e.what());
    }
    configs.push_back(std::move(c));
  }

  std::vector<CommandOutput> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        results[i] = cmd_simulate(configs[i], dir / cell_name(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto nthreads = std::min<std::size_t>(static_cast<std::size_t>(jobs), cells.size());
  for (std::size_t k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Aggregate sequentially in cell order.
  std::string agg = "cell";
  for (const SweepAxis& a : cfg.sweep) agg += "," + a.key;
  agg += ",status,exit_code,E0,E_final,energy_drift,max_abs_u\n";
  CommandOutput res;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    agg += cell_name(i);
    for (const std::string& v : cells[i]) agg += "," + v;
    if (errors[i]) {
      agg += ",error,,,,,\n";
      continue;
    }
    agg += ",ok," + std::to_string(results[i].exit_code);
    for (const char* key : {"E0", "E_final", "energy_drift", "max_abs_u"}) {
      agg += ",";
      for (const auto& [k, v] : results[i].stats)
        if (k == key) agg += format_double(v);
    }
    agg += "\n";
    for (CheckResult c : results[i].checks) {
      c.name = cell_name(i) + "." + c.name;
      res.checks.push_back(c);
    }
  }
  out::write_text(dir / "aggregate.csv", agg);
  res.files = {"aggregate.csv"};
  out::write_metadata(dir, {"sweep", &cfg, res.checks, false, res.files});
  out::write_timings(dir, {{"total_seconds", seconds_since(t0)}});

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ConfigError& e) {
      throw ConfigError(cell_label(i) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError(cell_label(i) + ": " + e.what());
    }
  }
  res.exit_code = exit_code_for(res.checks);
  return res;
}

}  // namespace kgtx
