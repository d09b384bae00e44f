#pragma once

#include <vector>

#include "tdem/core_model.hpp"

namespace tdem {

/// Decay-rate spectrum of a homogeneous permeable, conducting sphere for one
/// multipole order. Roots zeta_n are the scaled decay rates: mode n decays as
/// exp(-zeta_n^2 t / tau_c).
struct SphereSpectrum {
  int l = 1;
  double mu_ratio = 1.0;              ///< mu_c / mu_b
  std::vector<double> roots;          ///< strictly increasing, > 0
  std::vector<double> coefficients;   ///< a_n, positive

  std::size_t size() const { return roots.size(); }
};

/// Left-hand side of the sphere decay-rate equation
///   (mu_b/mu_c) zeta j_{l-1}(zeta) + l (1 - mu_b/mu_c) j_l(zeta) = 0.
double decay_rate_residual(int l, double mu_ratio, double zeta);

/// d/dzeta of decay_rate_residual.
double decay_rate_residual_derivative(int l, double mu_ratio, double zeta);

/// The n_roots smallest positive roots of the decay-rate equation together with
/// their series coefficients a_n = j_l^2 / (j_l^2 - j_{l+1} j_{l-1}).
/// Throws NumericError if the bracketing scan falls short or a coefficient
/// denominator degenerates.
SphereSpectrum find_roots(int l, double mu_ratio, int n_roots);

/// A truncated series value together with an estimated bound on the omitted tail.
struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// H_l(tau) = sum_n a_n exp(-zeta_n^2 tau) / zeta_n^2, tau = t / tau_c.
SeriesValue H_l(const SphereSpectrum& spec, double tau);

/// -dH_l/dtau = sum_n a_n exp(-zeta_n^2 tau). Diverges as tau -> 0; requires tau > 0.
SeriesValue minus_dH_l_dtau(const SphereSpectrum& spec, double tau);

/// First n_terms of the H_l series (the "few slowest modes" late-time form).
double H_l_truncated(const SphereSpectrum& spec, double tau, int n_terms);

/// Closed form H_l(0) = (mu_b / 2 mu_c) / [l + (l+1) mu_b/mu_c].
double H_l_zero(int l, double mu_ratio);

/// Analytic surface-mode labels on a sphere.
struct SphereModeLabels {
  int l = 1;
  int m = 0;
  double kappa = 0.0;   ///< l / sqrt(tau_mag), s^{-1/2}
  double lambda = 0.0;  ///< l(l+1) / (L_c^2 mu_c sqrt(D_c))
  double length = 0.0;  ///< L_c / l, m

  /// Crossover time of this mode, 1 / kappa^2 = tau_mag / l^2.
  double crossover_time() const { return 1.0 / (kappa * kappa); }
};

std::vector<SphereModeLabels> sphere_mode_labels(const TargetParams& p, int l_max);

/// kappa_l for a single order (all m share it).
double sphere_kappa(const TargetParams& p, int l);

/// Azimuthal screening current K_phi(theta) = amplitude * sin(theta) on a sphere
/// whose interior field H0 z-hat is frozen at pulse termination.
struct ScreeningCurrent {
  double amplitude = 0.0;  ///< A/m for H0 in A/m
  double radius = 0.0;

  double K_phi(double theta) const;
};

/// The exterior Neumann problem for a frozen uniform interior field gives a
/// dipole potential; the tangential jump then yields
///   K_phi = (1 + mu_c / (2 mu_b)) H0 sin(theta).
ScreeningCurrent initial_screening_sphere(const TargetParams& p, double H0);

} // namespace tdem
