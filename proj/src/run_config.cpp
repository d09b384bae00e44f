#include "tdem/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "tdem/errors.hpp"

namespace tdem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& key, const std::string& msg) {
  throw ConfigError((where.empty() ? "" : where + ": ") + key + ": " + msg);
}

double parse_double(const std::string& where, const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x))
    fail(where, key, "expected a number, got '" + v + "'");
  return x;
}

int parse_int(const std::string& where, const std::string& key, const std::string& v) {
  int x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    fail(where, key, "expected an integer, got '" + v + "'");
  return x;
}

ModelTag parse_model(const std::string& where, const std::string& s) {
  for (ModelTag m : {ModelTag::Exact, ModelTag::Early, ModelTag::AsymptoteEarly, ModelTag::AsymptoteLate})
    if (s == to_string(m)) return m;
  fail(where, "models", "unknown model '" + s + "'");
}

} // namespace

void apply_setting(RunConfig& cfg, const std::string& key_in, const std::string& value_in,
                   const std::string& where) {
  const std::string key = trim(key_in);
  const std::string v = trim(value_in);
  if (v.empty()) fail(where, key, "missing value");
  if (key == "mu_c") cfg.target.mu_c = parse_double(where, key, v);
  else if (key == "mu_b") cfg.target.mu_b = parse_double(where, key, v);
  else if (key == "mu_ratio") cfg.mu_ratio = parse_double(where, key, v);
  else if (key == "sigma_c") cfg.target.sigma_c = parse_double(where, key, v);
  else if (key == "L_c") cfg.target.L_c = parse_double(where, key, v);
  else if (key == "sigma_b") cfg.target.sigma_b = parse_double(where, key, v);
  else if (key == "R") cfg.target.R = parse_double(where, key, v);
  else if (key == "t_min") cfg.t_min = parse_double(where, key, v);
  else if (key == "t_max") cfg.t_max = parse_double(where, key, v);
  else if (key == "points") cfg.points = parse_int(where, key, v);
  else if (key == "spacing") {
    if (v == "log") cfg.spacing = Spacing::Log;
    else if (v == "linear") cfg.spacing = Spacing::Linear;
    else fail(where, key, "expected 'log' or 'linear', got '" + v + "'");
  } else if (key == "l_max") cfg.l_max = parse_int(where, key, v);
  else if (key == "roots") cfg.roots = parse_int(where, key, v);
  else if (key == "mesh_level") cfg.mesh_level = parse_int(where, key, v);
  else if (key == "mesh") cfg.mesh = v;
  else if (key == "modes") cfg.modes = parse_int(where, key, v);
  else if (key == "out") cfg.out = v;
  else if (key == "models") {
    cfg.models.clear();
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) cfg.models.push_back(parse_model(where, trim(item)));
  } else {
    fail(where, key.empty() ? std::string("(empty key)") : key, "unknown key");
  }
}

void read_config(RunConfig& cfg, std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1), where);
  }
  if (in.bad()) throw IoError("error reading " + source);
}

void read_config(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config '" + path.string() + "'");
  read_config(cfg, f, path.string());
}

void RunConfig::finalize() {
  if (mu_ratio) {
    if (!(*mu_ratio > 0.0)) throw ConfigError("mu_ratio: must be > 0");
    target.mu_c = *mu_ratio * target.mu_b;
  }
  try {
    target.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(t_min > 0.0)) throw ConfigError("t_min: must be > 0");
  if (!(t_max > t_min)) throw ConfigError("t_max: must be greater than t_min");
  if (points < 2) throw ConfigError("points: must be >= 2");
  if (l_max < 1) throw ConfigError("l_max: must be >= 1");
  if (roots < 1) throw ConfigError("roots: must be >= 1");
  if (mesh_level < 0 || mesh_level > 6) throw ConfigError("mesh_level: must be in 0..6");
  if (modes < 1) throw ConfigError("modes: must be >= 1");
  if (models.empty()) throw ConfigError("models: at least one model is required");
  if (out.empty()) throw ConfigError("out: empty path");
}

bool RunConfig::wants(ModelTag m) const {
  for (ModelTag x : models)
    if (x == m) return true;
  return false;
}

std::vector<double> RunConfig::time_grid() const { return make_grid(t_min, t_max, points, spacing); }

std::vector<double> make_grid(double lo, double hi, int points, Spacing spacing) {
  if (points < 2 || !(hi > lo) || (spacing == Spacing::Log && !(lo > 0.0)))
    throw std::invalid_argument("make_grid: invalid range or point count");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double n = points - 1;
  for (int i = 0; i < points; ++i) {
    const double f = i / n;
    g[static_cast<std::size_t>(i)] = spacing == Spacing::Log
                                         ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)))
                                         : lo + f * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

} // namespace tdem
