#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdem/csv.hpp"
#include "tdem/power_law_fit.hpp"
#include "tdem/run_config.hpp"

namespace tdem {

/// Sphere decay spectrum for l = 1..l_max, `roots` rows per order:
/// l,n,zeta,tau_decay,kappa,tau_cross (times in seconds).
CsvTable cmd_spectrum(const RunConfig& cfg);

/// Sphere response on the configured time grid. Columns t, tau, then per l the
/// selected models of H_l (exact also reports its tail bound) followed by the
/// voltage-like V_l = -dH_l/dtau. The asymptote V columns are the pure power laws.
CsvTable cmd_decay(const RunConfig& cfg);

/// Power-law fits of column `column` against "t".
FitReport cmd_fit(const CsvTable& data, const std::vector<std::pair<double, double>>& windows,
                  const std::string& column = "V");
CsvTable fit_report_table(const FitReport& report);

/// Panels of the sphere comparison figure, keyed by mu_c/mu_b.
inline constexpr int kFig3Panels[] = {1, 5, 100};

/// H_l(tau) for l = 1..5 on a log grid tau in [1e-6, 1]: exact, early,
/// asym_early, asym_late, plus the three-term series (late3) for panel 1.
/// Throws ConfigError for an unknown panel.
CsvTable cmd_fig3(int panel, int points = 241, int roots = 2000);

/// Surface-mode spectrum of an icosphere of radius L_c (or of cfg.mesh):
/// n,kappa,multiplet,multiplet_size,lambda and, for spherical meshes, the
/// analytic values and relative errors.
CsvTable cmd_modes(const RunConfig& cfg);

} // namespace tdem
