// Command-line front end: simulate, linear-spectral, verify, sweep.
#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "kgtx/cli.hpp"

namespace {

int report(const kgtx::CommandOutput& out, const std::filesystem::path& dir) {
  for (const auto& c : out.checks)
    std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << "  " << std::setprecision(6)
              << c.value << " (threshold " << c.threshold << ")\n";
  std::cout << "output: " << dir.string() << "\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-branch Klein-Gordon transmission problem: solvers and checks"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  long long seed = -1;
  int jobs = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file (key = value)")->required();
    sub->add_option("--out", out_dir, "output directory (KGTX_OUT overrides)");
    sub->add_option("--seed", seed, "seed for randomized audits")->check(CLI::NonNegativeNumber);
  };
  CLI::App* sim = app.add_subcommand("simulate", "finite-difference run");
  CLI::App* lin = app.add_subcommand("linear-spectral", "closed-form linear solution");
  CLI::App* ver = app.add_subcommand("verify", "run the full check suite");
  CLI::App* swp = app.add_subcommand("sweep", "Cartesian parameter sweep");
  for (CLI::App* s : {sim, lin, ver, swp}) add_common(s);
  swp->add_option("--jobs", jobs, "parallel cells")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    kgtx::RunConfig cfg = kgtx::load_config(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    std::filesystem::path dir = cfg.output_dir;
    if (!out_dir.empty()) dir = out_dir;
    if (const char* env = std::getenv("KGTX_OUT"); env && *env) dir = env;

    if (sim->parsed()) return report(kgtx::cmd_simulate(cfg, dir), dir);
    if (lin->parsed()) return report(kgtx::cmd_linear_spectral(cfg, dir), dir);
    if (ver->parsed()) return report(kgtx::cmd_verify(cfg, dir), dir);
    return report(kgtx::cmd_sweep(cfg, dir, jobs), dir);
  } catch (const kgtx::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const kgtx::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
}
