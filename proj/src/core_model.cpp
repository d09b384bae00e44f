#include "tdem/core_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tdem {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be finite and > 0 (got " +
                                std::to_string(v) + ")");
}

} // namespace

void TargetParams::validate() const {
  require_positive(mu_c, "mu_c");
  require_positive(mu_b, "mu_b");
  require_positive(sigma_c, "sigma_c");
  require_positive(L_c, "L_c");
  if (sigma_b && (!(*sigma_b >= 0.0) || !std::isfinite(*sigma_b)))
    throw std::invalid_argument("sigma_b must be finite and >= 0");
  if (R) require_positive(*R, "R");
  if (!std::isfinite(mu_ratio()) || !(mu_ratio() > 0.0))
    throw std::invalid_argument("mu_c/mu_b is not finite");
}

double diffusion_constant(double mu_rel, double sigma) {
  return 1.0 / (kMu0 * mu_rel * sigma);
}

DerivedTimescales derive_timescales(const TargetParams& p, std::optional<double> slowest_root) {
  p.validate();
  DerivedTimescales d;
  d.D_c = diffusion_constant(p.mu_c, p.sigma_c);
  d.tau_c = p.L_c * p.L_c / d.D_c;
  const double contrast = p.mu_b / p.mu_c;
  d.tau_mag = d.tau_c * contrast * contrast;

  if (p.sigma_b && *p.sigma_b > 0.0) {
    d.D_b = diffusion_constant(p.mu_b, *p.sigma_b);
    if (p.R) d.tau_b = (*p.R) * (*p.R) / *d.D_b;
  }

  const double z11 = slowest_root.value_or(std::numbers::pi);
  if (!(z11 > 0.0)) throw std::invalid_argument("slowest_root must be > 0");
  d.tau_e_estimate = d.tau_c / (z11 * z11);
  return d;
}

double epsilon_of_t(const DerivedTimescales& d, double L_c, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (!(L_c > 0.0)) throw std::invalid_argument("L_c must be > 0");
  return std::sqrt(d.D_c * t) / L_c;
}

} // namespace tdem
