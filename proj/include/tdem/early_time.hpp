#pragma once

#include <span>
#include <string>
#include <vector>

#include "tdem/core_model.hpp"

namespace tdem {

/// Point at which the per-mode diffusion kernel is evaluated.
/// Z = z / sqrt(D_c) is the scaled depth (Z <= 0 inside the target).
struct ProfileQuery {
  double Z = 0.0;      ///< s^{1/2}
  double t = 1.0;      ///< s, > 0
  double kappa = 0.0;  ///< s^{-1/2}, >= 0

  void validate() const;
};

/// H(Z, t; kappa): response of one surface mode to a unit surface current sheet.
double profile_H(const ProfileQuery& q);

/// Boundary trace H(0, t; kappa) = (1/kappa) [1 - erfcx(kappa sqrt(t))].
double boundary_H(double t, double kappa);

/// d/dt of boundary_H = 1/sqrt(pi t) - kappa erfcx(kappa sqrt(t)).
double boundary_dH_dt(double t, double kappa);

/// Early-early branch sqrt(4t/pi) [1 - (1/2) sqrt(pi kappa^2 t)].
double boundary_H_small_time(double t, double kappa);

/// Late-early branch (1/kappa) [1 - (pi kappa^2 t)^{-1/2}]; kappa > 0.
double boundary_H_large_time(double t, double kappa);

/// Leading power laws of boundary_dH_dt: 1/sqrt(pi t) and
/// t^{-3/2} / (2 sqrt(pi) kappa^2).
double boundary_dH_dt_small_time(double t);
double boundary_dH_dt_large_time(double t, double kappa);

/// Early-time approximation to the sphere's H_l(t / tau_c):
///   H_l(0) - (4 tau_c)^{-1/2} boundary_H(t, kappa_l).
double early_time_H_l(const TargetParams& p, int l, double t);

/// Same as early_time_H_l with boundary_H replaced by one asymptotic branch.
double early_early_H_l(const TargetParams& p, int l, double t);
double late_early_H_l(const TargetParams& p, int l, double t);

/// -dH_l/dtau for the early-time approximation (voltage-like, dimensionless).
double early_time_V_l(const TargetParams& p, int l, double t);

enum class ModeFamily { Alpha = 1, Beta = 2 };

/// Surface-current amplitudes in the magnetic surface-mode expansion.
/// Alpha modes carry their eigenvalue kappa; beta modes diffuse with kappa = 0.
struct ModeAmplitudes {
  std::vector<int> ids;
  std::vector<double> K1;     ///< alpha-mode amplitudes
  std::vector<double> K2;     ///< beta-mode amplitudes
  std::vector<double> kappa;  ///< alpha-mode eigenvalues, s^{-1/2}

  /// Throws std::invalid_argument on length mismatch or negative kappa.
  void validate() const;
  std::size_t index_of(int id) const;
};

/// A^{(i)}_n(Z, t) = -K^{(i)}_n H(Z, t; kappa_n delta_{i1}).
double mode_profile_A(const ModeAmplitudes& amp, int id, ModeFamily family, double Z, double t);

enum class ModelTag { Exact, Early, AsymptoteEarly, AsymptoteLate };

std::string to_string(ModelTag tag);

/// Sampled time series with its provenance.
struct DecayCurve {
  std::vector<double> times;
  std::vector<double> values;
  ModelTag model = ModelTag::Early;

  void validate() const;
};

/// V(t_k) = sum_n c_n K1_n boundary_dH_dt(t_k, kappa_n). Beta modes produce
/// no exterior magnetic field and are left out.
DecayCurve synthesize_response(const ModeAmplitudes& amp, std::span<const double> couplings,
                               std::span<const double> times);

/// Central-difference estimate of (d/dt - d^2/dZ^2) profile_H at an interior
/// point, with the magnitude of the d/dt term for scaling.
struct PdeResidual {
  double residual = 0.0;
  double dt_term = 0.0;
};

PdeResidual pde_residual(const ProfileQuery& q, double h_t, double h_Z);

/// One-sided estimate of (d/dZ + kappa) H at Z = 0^-; equals 1 analytically.
double boundary_condition_value(double t, double kappa, double h_Z);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> v);

} // namespace tdem
