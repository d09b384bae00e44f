// tdem_cli: sphere decay spectra, early-time curves, power-law fits and
// surface-mode tables as CSV.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdem/commands.hpp"
#include "tdem/errors.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::map<std::string, std::string> values;  // config key -> text
  std::vector<std::string> sets;
};

// Registers the shared flags on a subcommand. Values are kept as text and go
// through the same parser as the config file so errors read the same way.
void add_common(CLI::App* app, Overrides& o, bool with_time, bool with_mesh) {
  app->add_option_function<std::string>("--config", [&o](const std::string& s) { o.config = s; },
                                        "key=value config file");
  auto bind = [&](const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(flag, [&o, key](const std::string& s) { o.values[key] = s; },
                                          help);
  };
  bind("--out", "out", "output CSV path ('-' for stdout)");
  bind("--mu-ratio", "mu_ratio", "mu_c / mu_b");
  bind("--l-max", "l_max", "highest multipole order");
  bind("--roots", "roots", "sphere decay roots per order");
  if (with_time) {
    bind("--tmin", "t_min", "first time sample, s");
    bind("--tmax", "t_max", "last time sample, s");
    bind("--points", "points", "number of time samples");
  }
  if (with_mesh) {
    bind("--mesh-level", "mesh_level", "icosphere subdivision level");
    bind("--modes", "modes", "number of surface modes");
    bind("--mesh", "mesh", "closed triangle mesh in OFF format");
  }
  app->add_option("--set", o.sets, "extra key=value overrides")->take_all();
}

tdem::RunConfig build_config(const Overrides& o) {
  tdem::RunConfig cfg;
  if (o.config) tdem::read_config(cfg, std::filesystem::path(*o.config));
  for (const auto& [k, v] : o.values) tdem::apply_setting(cfg, k, v, "--" + k);
  for (const std::string& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw tdem::ConfigError("--set: expected key=value, got '" + s + "'");
    tdem::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1), "--set");
  }
  cfg.finalize();
  return cfg;
}

std::pair<double, double> parse_window(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw tdem::ConfigError("--window: expected LO,HI, got '" + s + "'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw tdem::ConfigError("--window: not numeric: '" + s + "'");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Early-time electromagnetic decay of conducting, permeable targets"};
  app.require_subcommand(1);

  Overrides o_spec, o_decay, o_modes;
  CLI::App* spectrum = app.add_subcommand("spectrum", "sphere decay roots and crossover times");
  add_common(spectrum, o_spec, false, false);

  CLI::App* decay = app.add_subcommand("decay", "exact and early-time sphere response curves");
  add_common(decay, o_decay, true, false);

  CLI::App* modes = app.add_subcommand("modes", "surface-mode spectrum of a closed mesh");
  add_common(modes, o_modes, false, true);

  std::string fit_input, fit_column = "V", fit_out = "-";
  std::vector<std::string> windows;
  CLI::App* fit = app.add_subcommand("fit", "log-log power-law fits of a t,V CSV");
  fit->add_option("input", fit_input, "CSV file with a 't' column")->required();
  fit->add_option("--column", fit_column, "value column (default V)");
  fit->add_option("--window", windows, "fit window LO,HI in seconds (repeatable)")->required();
  fit->add_option("--out", fit_out, "output CSV path");

  int panel = 1, fig_points = 241, fig_roots = 2000;
  std::string fig_out = "-";
  CLI::App* fig3 = app.add_subcommand("fig3", "data behind one sphere comparison panel");
  fig3->add_option("--panel", panel, "mu_c/mu_b of the panel: 1, 5 or 100")->required();
  fig3->add_option("--points", fig_points, "tau samples");
  fig3->add_option("--roots", fig_roots, "sphere decay roots per order");
  fig3->add_option("--out", fig_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) {
      const auto cfg = build_config(o_spec);
      tdem::cmd_spectrum(cfg).write(cfg.out);
    } else if (decay->parsed()) {
      const auto cfg = build_config(o_decay);
      tdem::cmd_decay(cfg).write(cfg.out);
    } else if (modes->parsed()) {
      const auto cfg = build_config(o_modes);
      tdem::cmd_modes(cfg).write(cfg.out);
    } else if (fit->parsed()) {
      std::vector<std::pair<double, double>> w;
      for (const auto& s : windows) w.push_back(parse_window(s));
      const auto data = tdem::read_csv(std::filesystem::path(fit_input));
      tdem::fit_report_table(tdem::cmd_fit(data, w, fit_column)).write(fit_out);
    } else if (fig3->parsed()) {
      tdem::cmd_fig3(panel, fig_points, fig_roots).write(fig_out);
    }
  } catch (const tdem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const tdem::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const tdem::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
