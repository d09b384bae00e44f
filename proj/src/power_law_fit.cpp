#include "tdem/power_law_fit.hpp"

#include <cmath>
#include <sstream>

#include "tdem/errors.hpp"

namespace tdem {

double PowerLawFit::evaluate(double t) const { return std::exp(intercept + slope * std::log(t)); }

std::string regime_label(double slope) {
  if (std::abs(slope + 0.5) < 0.1) return "t^-1/2";
  if (std::abs(slope + 1.5) < 0.1) return "t^-3/2";
  return "other";
}

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> V, double t_lo,
                          double t_hi) {
  if (t.size() != V.size()) throw ConfigError("fit: t and V have different lengths");
  if (t.empty()) throw ConfigError("fit: no data");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) {
      std::ostringstream os;
      os << "fit: t must be strictly increasing (row " << i + 1 << ")";
      throw ConfigError(os.str());
    }
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw ConfigError("fit: window needs 0 < t_lo < t_hi");
  const double span_tol = 1e-12 * t.back();
  if (t_lo < t.front() - span_tol || t_hi > t.back() + span_tol) {
    std::ostringstream os;
    os << "fit: window [" << t_lo << ", " << t_hi << "] outside the data span [" << t.front()
       << ", " << t.back() << "]";
    throw ConfigError(os.str());
  }

  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(V[i] > 0.0)) {
      std::ostringstream os;
      os << "fit: nonpositive value V=" << V[i] << " at t=" << t[i] << " inside the window";
      throw ConfigError(os.str());
    }
    x.push_back(std::log(t[i]));
    y.push_back(std::log(V[i]));
  }
  if (x.size() < 5) {
    std::ostringstream os;
    os << "fit: window [" << t_lo << ", " << t_hi << "] holds " << x.size()
       << " points, need at least 5";
    throw ConfigError(os.str());
  }

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  PowerLawFit fit;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.points = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    sse += r * r;
  }
  fit.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  fit.regime = regime_label(fit.slope);
  return fit;
}

FitReport fit_windows(std::span<const double> t, std::span<const double> V,
                      const std::vector<std::pair<double, double>>& windows) {
  if (windows.empty()) throw ConfigError("fit: at least one window is required");
  FitReport report;
  for (const auto& [lo, hi] : windows) report.windows.push_back(fit_power_law(t, V, lo, hi));
  if (report.windows.size() >= 2) {
    const PowerLawFit& a = report.windows[0];
    const PowerLawFit& b = report.windows[1];
    if (std::abs(a.slope - b.slope) < 1e-12)
      throw NumericError("fit: parallel asymptotes have no crossover");
    report.crossover_estimate = std::exp((b.intercept - a.intercept) / (a.slope - b.slope));
  }
  return report;
}

} // namespace tdem
