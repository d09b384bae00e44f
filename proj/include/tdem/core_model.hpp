#pragma once

#include <optional>

namespace tdem {

/// Vacuum permeability in SI units (H/m).
inline constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846;

/// Physical properties of a conducting target in a quasistatic background.
/// Permeabilities are relative (dimensionless); lengths in metres.
struct TargetParams {
  double mu_c = 1.0;     ///< target relative permeability
  double mu_b = 1.0;     ///< background relative permeability
  double sigma_c = 1e7;  ///< target conductivity, S/m
  double L_c = 0.05;     ///< length scale (sphere radius), m
  std::optional<double> sigma_b;  ///< background conductivity, S/m (metadata)
  std::optional<double> R;        ///< sensor-target distance, m (metadata)

  /// mu_c / mu_b.
  double mu_ratio() const { return mu_c / mu_b; }

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

struct DerivedTimescales {
  double D_c = 0.0;       ///< target diffusion constant, m^2/s
  double tau_c = 0.0;     ///< bulk decay time L_c^2 / D_c, s
  double tau_mag = 0.0;   ///< magnetic crossover time tau_c (mu_b/mu_c)^2, s
  std::optional<double> D_b;    ///< background diffusion constant, m^2/s
  std::optional<double> tau_b;  ///< background communication time R^2/D_b, s
  /// Heuristic onset of bulk effects: tau_c / zeta_11^2. Not a derived
  /// theoretical quantity; do not treat it as one.
  double tau_e_estimate = 0.0;
};

/// SI diffusion constant 1 / (mu0 mu sigma).
double diffusion_constant(double mu_rel, double sigma);

/// Derives all timescales. `slowest_root` is the smallest sphere decay root
/// zeta_11 when the caller has it; otherwise pi is used for tau_e_estimate.
DerivedTimescales derive_timescales(const TargetParams& p,
                                    std::optional<double> slowest_root = std::nullopt);

/// Boundary-layer small parameter sqrt(D_c t / L_c^2).
double epsilon_of_t(const DerivedTimescales& d, double L_c, double t);

} // namespace tdem
