#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tdem {

/// Least-squares line log V = intercept + slope log t over one time window,
/// uniform weights in log-log space.
struct PowerLawFit {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t points = 0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  std::string regime;  ///< "t^-1/2", "t^-3/2" or "other"

  double evaluate(double t) const;
};

struct FitReport {
  std::vector<PowerLawFit> windows;
  /// Intersection time of the first two fitted lines, when two windows are given.
  std::optional<double> crossover_estimate;
};

/// Names the regime a slope falls into (within 0.1 of -1/2 or -3/2).
std::string regime_label(double slope);

/// Fits one window [t_lo, t_hi]. t must be strictly increasing and the window
/// inside the data span; V must be positive inside the window and at least 5
/// samples must fall in it. Violations throw ConfigError.
PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> V, double t_lo,
                          double t_hi);

FitReport fit_windows(std::span<const double> t, std::span<const double> V,
                      const std::vector<std::pair<double, double>>& windows);

} // namespace tdem
