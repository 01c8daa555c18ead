#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "kgtx/cli.hpp"

namespace kgtx {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

bool parse_plain(const std::string& s, double& v) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  return ec == std::errc() && p == e;
}

double to_number(const std::string& key, const ConfigEntry& e) {
  const std::string s = trim(e.value);
  double v = 0.0;
  const auto slash = s.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = parse_plain(s, v);
  } else {
    double num = 0.0, den = 0.0;
    ok = parse_plain(trim(s.substr(0, slash)), num) && parse_plain(trim(s.substr(slash + 1)), den) &&
         den != 0.0;
    v = ok ? num / den : 0.0;
  }
  if (!ok || !std::isfinite(v))
    throw ConfigError("'" + key + "' expects a number, got '" + e.value + "'", e.line);
  return v;
}

bool to_bool(const std::string& key, const ConfigEntry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + e.value + "'", e.line);
}

std::string to_choice(const std::string& key, const ConfigEntry& e,
                      std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (e.value == a) return e.value;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw ConfigError("'" + key + "' must be one of " + list + ", got '" + e.value + "'", e.line);
}

std::map<std::string, ConfigEntry> tokenize(const std::string& text) {
  std::map<std::string, ConfigEntry> entries;
  std::stringstream ss(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line);
    if (value.empty()) throw ConfigError("'" + key + "' has no value", line);
    if (entries.count(key)) throw ConfigError("duplicate key '" + key + "'", line);
    entries[key] = ConfigEntry{value, line};
  }
  return entries;
}

std::string text_of(const std::map<std::string, ConfigEntry>& entries) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  for (const auto& [k, e] : entries) lines.emplace_back(e.line, k + " = " + e.value);
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [n, l] : lines) out += l + "\n";
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "c", "a1", "a2", "nonlinearity", "lambda", "bump_amplitude", "bump_center", "bump_width",
      "h", "L", "dt", "cfl", "T", "snapshots", "mode", "eps_rel", "delta",
      "spectral_tolerance", "l2_tolerance", "energy_tolerance", "conserving_energy_tolerance",
      "norm_tolerance", "outside_tolerance", "causality_cfl", "output_dir", "seed",
      "lipschitz_pairs", "allow_inadmissible"};
  return keys;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.entries = tokenize(text);
  const auto& keys = config_keys();

  for (const auto& [key, e] : cfg.entries) {
    if (key.rfind("sweep.", 0) == 0) {
      const std::string target = key.substr(6);
      if (std::find(keys.begin(), keys.end(), target) == keys.end() || target == "output_dir")
        throw ConfigError("cannot sweep over '" + target + "'", e.line);
      SweepAxis axis{target, split_list(e.value)};
      for (const auto& v : axis.values)
        if (v.empty()) throw ConfigError("empty value in sweep list", e.line);
      cfg.sweep.push_back(std::move(axis));
    } else if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "'", e.line);
    }
  }
  // Axes in file order: the first axis varies slowest.
  std::sort(cfg.sweep.begin(), cfg.sweep.end(), [&](const SweepAxis& x, const SweepAxis& y) {
    return cfg.entries.at("sweep." + x.key).line < cfg.entries.at("sweep." + y.key).line;
  });

  auto has = [&](const char* k) { return cfg.entries.count(k) > 0; };
  auto at = [&](const char* k) -> const ConfigEntry& { return cfg.entries.at(k); };
  auto num = [&](const char* k, double& dst) {
    if (has(k)) dst = to_number(k, at(k));
  };
  auto line_of = [&](const char* k) { return has(k) ? at(k).line : std::size_t{0}; };
  auto positive = [&](const char* k, double v) {
    if (!(v > 0.0)) throw ConfigError("'" + std::string(k) + "' must be positive", line_of(k));
  };

  for (const char* k : {"c", "a1", "a2"})
    if (!has(k)) throw ConfigError("missing required key '" + std::string(k) + "'");
  num("c", cfg.c);
  num("a1", cfg.a1);
  num("a2", cfg.a2);
  try {
    (void)PhysicsParams::make(cfg.c, cfg.a1, cfg.a2);
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    const char* k = what.find("a2") != std::string::npos ? "a2"
                    : what.find("a1") != std::string::npos ? "a1"
                                                           : "c";
    throw ConfigError(what, line_of(k));
  }

  if (has("nonlinearity")) cfg.nonlinearity = to_choice("nonlinearity", at("nonlinearity"), {"none", "cubic"});
  num("lambda", cfg.lambda);
  num("bump_amplitude", cfg.bump_amplitude);
  num("bump_center", cfg.bump_center);
  num("bump_width", cfg.bump_width);
  positive("bump_width", cfg.bump_width);
  if (!(cfg.bump_center - cfg.bump_width > 0.0))
    throw ConfigError("bump support must lie in (0, inf): need bump_center > bump_width",
                      line_of(has("bump_center") ? "bump_center" : "bump_width"));

  num("h", cfg.h);
  positive("h", cfg.h);
  num("T", cfg.T);
  if (!(cfg.T > 0.0)) throw ConfigError("'T' must be positive", line_of("T"));
  num("cfl", cfg.cfl);
  positive("cfl", cfg.cfl);
  num("causality_cfl", cfg.causality_cfl);
  positive("causality_cfl", cfg.causality_cfl);
  const double x_hi = cfg.bump_center + cfg.bump_width;
  if (has("L")) {
    num("L", cfg.L);
    positive("L", cfg.L);
  } else {
    cfg.L = x_hi + cfg.c * cfg.T + 10.0 * cfg.h;
  }
  if (has("dt")) {
    num("dt", cfg.dt);
    positive("dt", cfg.dt);
  } else {
    RunOptions o;
    o.cfl = cfg.cfl;
    cfg.dt = resolve_dt(o, cfg.h, cfg.c, cfg.T);
  }

  if (has("snapshots")) {
    for (const std::string& s : split_list(at("snapshots").value)) {
      const double t = to_number("snapshots", ConfigEntry{s, at("snapshots").line});
      if (!(t >= 0.0 && t <= cfg.T * (1.0 + 1e-12)))
        throw ConfigError("snapshot time " + s + " outside [0, T]", at("snapshots").line);
      cfg.snapshots.push_back(t);
    }
  } else {
    for (int i = 0; i <= 4; ++i) cfg.snapshots.push_back(cfg.T * i / 4.0);
  }

  if (has("mode"))
    cfg.mode = to_choice("mode", at("mode"), {"leapfrog", "conserving", "spectral-linear"});
  if (cfg.mode == "spectral-linear" && cfg.nonlinearity != "none")
    throw ConfigError("mode spectral-linear requires nonlinearity = none",
                      std::max(line_of("mode"), line_of("nonlinearity")));

  num("eps_rel", cfg.eps_rel);
  if (!(cfg.eps_rel > 0.0 && cfg.eps_rel < 1.0))
    throw ConfigError("'eps_rel' must lie in (0, 1)", line_of("eps_rel"));
  if (has("delta")) {
    num("delta", cfg.delta);
    if (!(cfg.delta >= 2.0 * cfg.h))
      throw ConfigError("'delta' must be at least 2h", line_of("delta"));
  } else {
    cfg.delta = 2.0 * cfg.h;
  }
  for (auto [k, dst] : {std::pair{"spectral_tolerance", &cfg.spectral_tolerance},
                        std::pair{"l2_tolerance", &cfg.l2_tolerance},
                        std::pair{"energy_tolerance", &cfg.energy_tolerance},
                        std::pair{"conserving_energy_tolerance", &cfg.conserving_energy_tolerance},
                        std::pair{"norm_tolerance", &cfg.norm_tolerance},
                        std::pair{"outside_tolerance", &cfg.outside_tolerance}}) {
    num(k, *dst);
    positive(k, *dst);
  }
  if (has("output_dir")) cfg.output_dir = at("output_dir").value;
  if (has("seed")) {
    const double s = to_number("seed", at("seed"));
    if (!(s >= 0.0 && s == std::floor(s) && s < 1.8e19))
      throw ConfigError("'seed' must be a nonnegative integer", line_of("seed"));
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (has("lipschitz_pairs")) {
    const double n = to_number("lipschitz_pairs", at("lipschitz_pairs"));
    if (!(n >= 0.0 && n == std::floor(n) && n <= 1e6))
      throw ConfigError("'lipschitz_pairs' must be a nonnegative integer", line_of("lipschitz_pairs"));
    cfg.lipschitz_pairs = static_cast<int>(n);
  }
  if (has("allow_inadmissible")) cfg.allow_inadmissible = to_bool("allow_inadmissible", at("allow_inadmissible"));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig with_value(const RunConfig& cfg, const std::string& key, const std::string& value) {
  std::map<std::string, ConfigEntry> entries;
  std::size_t last = 0;
  for (const auto& [k, e] : cfg.entries) {
    last = std::max(last, e.line);
    if (k.rfind("sweep.", 0) != 0) entries[k] = e;
  }
  auto it = entries.find(key);
  if (it != entries.end())
    it->second.value = value;
  else
    entries[key] = ConfigEntry{value, last + 1};
  return parse_config(text_of(entries));
}

PhysicsParams RunConfig::physics() const { return PhysicsParams::make(c, a1, a2); }

InitialDatum RunConfig::datum() const {
  return InitialDatum{Profile::bump(bump_amplitude, bump_center, bump_width), Profile()};
}

NonlinearitySpec RunConfig::nonlinearity_spec() const {
  return nonlinearity == "cubic" ? NonlinearitySpec::cubic(lambda) : NonlinearitySpec::none();
}

BranchGrid RunConfig::grid() const {
  const auto cells = static_cast<std::size_t>(std::floor(L / h + 1e-9)) + 1;
  return BranchGrid(h, cells + 1);
}

Scheme RunConfig::scheme() const {
  return mode == "conserving" ? Scheme::conserving : Scheme::leapfrog;
}

RunOptions RunConfig::run_options() const {
  RunOptions o;
  o.scheme = scheme();
  o.dt = dt;
  o.cfl = cfl;
  o.snapshot_times = snapshots;
  o.allow_inadmissible = allow_inadmissible;
  return o;
}

std::vector<std::pair<std::string, std::string>> resolved_echo(const RunConfig& cfg) {
  std::string snaps;
  for (double t : cfg.snapshots) snaps += (snaps.empty() ? "" : ", ") + format_double(t);
  return {{"c", format_double(cfg.c)},
          {"a1", format_double(cfg.a1)},
          {"a2", format_double(cfg.a2)},
          {"nonlinearity", cfg.nonlinearity},
          {"lambda", format_double(cfg.lambda)},
          {"bump_amplitude", format_double(cfg.bump_amplitude)},
          {"bump_center", format_double(cfg.bump_center)},
          {"bump_width", format_double(cfg.bump_width)},
          {"h", format_double(cfg.h)},
          {"L", format_double(cfg.L)},
          {"dt", format_double(cfg.dt)},
          {"cfl", format_double(cfg.cfl)},
          {"T", format_double(cfg.T)},
          {"snapshots", snaps},
          {"mode", cfg.mode},
          {"eps_rel", format_double(cfg.eps_rel)},
          {"delta", format_double(cfg.delta)},
          {"spectral_tolerance", format_double(cfg.spectral_tolerance)},
          {"l2_tolerance", format_double(cfg.l2_tolerance)},
          {"energy_tolerance", format_double(cfg.energy_tolerance)},
          {"conserving_energy_tolerance", format_double(cfg.conserving_energy_tolerance)},
          {"norm_tolerance", format_double(cfg.norm_tolerance)},
          {"outside_tolerance", format_double(cfg.outside_tolerance)},
          {"causality_cfl", format_double(cfg.causality_cfl)},
          {"output_dir", cfg.output_dir},
          {"seed", std::to_string(cfg.seed)},
          {"lipschitz_pairs", std::to_string(cfg.lipschitz_pairs)},
          {"allow_inadmissible", cfg.allow_inadmissible ? "true" : "false"}};
}

}  // namespace kgtx
