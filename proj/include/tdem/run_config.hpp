#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tdem/core_model.hpp"
#include "tdem/early_time.hpp"

namespace tdem {

enum class Spacing { Log, Linear };

/// Settings shared by all CLI verbs.
///
/// Recognised keys (file and --set overrides): mu_c, mu_b, mu_ratio, sigma_c,
/// L_c, sigma_b, R, t_min, t_max, points, spacing (log|linear), l_max, roots,
/// mesh_level, mesh, modes, models, out.
struct RunConfig {
  TargetParams target;
  /// When set, overrides mu_c as mu_ratio * mu_b.
  std::optional<double> mu_ratio;

  double t_min = 1e-6;  ///< s
  double t_max = 1e-1;  ///< s
  int points = 200;
  Spacing spacing = Spacing::Log;

  int l_max = 5;
  int roots = 500;  ///< sphere decay roots per order

  int mesh_level = 3;
  std::optional<std::string> mesh;  ///< OFF file used instead of an icosphere
  int modes = 15;

  std::vector<ModelTag> models{ModelTag::Exact, ModelTag::Early, ModelTag::AsymptoteEarly,
                               ModelTag::AsymptoteLate};
  std::string out = "-";

  /// Applies mu_ratio and checks every invariant. Throws ConfigError naming the
  /// first offending field.
  void finalize();
  bool wants(ModelTag m) const;
  std::vector<double> time_grid() const;
};

/// Sets one key from its textual value. `where` prefixes error messages
/// (for example "run.cfg:12"). Throws ConfigError.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                   const std::string& where);

/// Reads key = value lines into cfg; '#' starts a comment.
void read_config(RunConfig& cfg, std::istream& in, const std::string& source);
void read_config(RunConfig& cfg, const std::filesystem::path& path);

/// Log- or linearly spaced grid with exact endpoints.
std::vector<double> make_grid(double lo, double hi, int points, Spacing spacing);

} // namespace tdem
