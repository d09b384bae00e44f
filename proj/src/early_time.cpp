#include "tdem/early_time.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tdem/specfun.hpp"
#include "tdem/sphere_exact.hpp"

namespace tdem {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Below this kappa sqrt(t) the 1/kappa form cancels badly and the kernel is
// evaluated from its expansion in kappa instead.
constexpr double kSmallKappaRootT = 1e-3;
constexpr int kSmallKappaTerms = 5;

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be finite and > 0");
}

void check_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("kappa must be finite and >= 0");
}

// H(Z,t;kappa) = sum_k (-kappa sqrt(4t))^k sqrt(4t) i^{k+1}erfc(|Z|/sqrt(4t))
double profile_small_kappa(double absZ, double t, double kappa) {
  const double s = std::sqrt(4.0 * t);
  const std::vector<double> i = ierfc(kSmallKappaTerms, absZ / s);
  double sum = 0.0;
  double w = s;
  for (int k = 0; k < kSmallKappaTerms; ++k) {
    sum += w * i[static_cast<std::size_t>(k) + 1];
    w *= -kappa * s;
  }
  return sum;
}

} // namespace

void ProfileQuery::validate() const {
  if (!(Z <= 0.0) || !std::isfinite(Z)) throw std::invalid_argument("Z must be finite and <= 0");
  check_time(t);
  check_kappa(kappa);
}

double profile_H(const ProfileQuery& q) {
  q.validate();
  const double absZ = -q.Z;
  const double s = std::sqrt(4.0 * q.t);
  const double xi = absZ / s;
  if (q.kappa == 0.0) return s * kInvSqrtPi * std::exp(-xi * xi) - absZ * std::erfc(xi);
  if (q.kappa * std::sqrt(q.t) < kSmallKappaRootT) return profile_small_kappa(absZ, q.t, q.kappa);
  // exp(k^2 t - k Z) erfc(u) = erfcx(u) exp(-Z^2/4t), u = (2 k t - Z)/sqrt(4t)
  const double u = (2.0 * q.kappa * q.t + absZ) / s;
  return (std::erfc(xi) - erfcx(u) * std::exp(-xi * xi)) / q.kappa;
}

double boundary_H(double t, double kappa) {
  check_time(t);
  check_kappa(kappa);
  const double y = kappa * std::sqrt(t);
  if (kappa == 0.0) return 2.0 * std::sqrt(t / kPi);
  if (y < kSmallKappaRootT) return profile_small_kappa(0.0, t, kappa);
  return (1.0 - erfcx(y)) / kappa;
}

double boundary_dH_dt(double t, double kappa) {
  check_time(t);
  check_kappa(kappa);
  return erfcx_deficit(kappa * std::sqrt(t)) / std::sqrt(t);
}

double boundary_H_small_time(double t, double kappa) {
  check_time(t);
  check_kappa(kappa);
  return 2.0 * std::sqrt(t / kPi) * (1.0 - 0.5 * std::sqrt(kPi * kappa * kappa * t));
}

double boundary_H_large_time(double t, double kappa) {
  check_time(t);
  if (!(kappa > 0.0)) throw std::invalid_argument("late-time branch needs kappa > 0");
  return (1.0 - 1.0 / std::sqrt(kPi * kappa * kappa * t)) / kappa;
}

double boundary_dH_dt_small_time(double t) {
  check_time(t);
  return 1.0 / std::sqrt(kPi * t);
}

double boundary_dH_dt_large_time(double t, double kappa) {
  check_time(t);
  if (!(kappa > 0.0)) throw std::invalid_argument("late-time branch needs kappa > 0");
  return 0.5 * kInvSqrtPi / (kappa * kappa * t * std::sqrt(t));
}

namespace {

struct SphereEarlyTerms {
  double H0;
  double prefactor;  // (4 tau_c)^{-1/2}
  double kappa;
  double tau_c;
};

SphereEarlyTerms sphere_terms(const TargetParams& p, int l) {
  const DerivedTimescales d = derive_timescales(p);
  return {H_l_zero(l, p.mu_ratio()), 1.0 / std::sqrt(4.0 * d.tau_c), l / std::sqrt(d.tau_mag),
          d.tau_c};
}

} // namespace

double early_time_H_l(const TargetParams& p, int l, double t) {
  const SphereEarlyTerms s = sphere_terms(p, l);
  return s.H0 - s.prefactor * boundary_H(t, s.kappa);
}

double early_early_H_l(const TargetParams& p, int l, double t) {
  const SphereEarlyTerms s = sphere_terms(p, l);
  return s.H0 - s.prefactor * boundary_H_small_time(t, s.kappa);
}

double late_early_H_l(const TargetParams& p, int l, double t) {
  const SphereEarlyTerms s = sphere_terms(p, l);
  return s.H0 - s.prefactor * boundary_H_large_time(t, s.kappa);
}

double early_time_V_l(const TargetParams& p, int l, double t) {
  const SphereEarlyTerms s = sphere_terms(p, l);
  return s.tau_c * s.prefactor * boundary_dH_dt(t, s.kappa);
}

void ModeAmplitudes::validate() const {
  const std::size_t n = ids.size();
  if (K1.size() != n || K2.size() != n || kappa.size() != n)
    throw std::invalid_argument("ModeAmplitudes: ids, K1, K2 and kappa must have equal length");
  for (double k : kappa) check_kappa(k);
}

std::size_t ModeAmplitudes::index_of(int id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return i;
  throw std::invalid_argument("unknown mode id " + std::to_string(id));
}

double mode_profile_A(const ModeAmplitudes& amp, int id, ModeFamily family, double Z, double t) {
  amp.validate();
  const std::size_t i = amp.index_of(id);
  if (family == ModeFamily::Alpha) return -amp.K1[i] * profile_H({Z, t, amp.kappa[i]});
  return -amp.K2[i] * profile_H({Z, t, 0.0});
}

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::Exact: return "exact";
    case ModelTag::Early: return "early";
    case ModelTag::AsymptoteEarly: return "asymptote-early";
    case ModelTag::AsymptoteLate: return "asymptote-late";
  }
  return "unknown";
}

void DecayCurve::validate() const {
  if (times.size() != values.size())
    throw std::invalid_argument("DecayCurve: times and values differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw std::invalid_argument("DecayCurve: times must be positive");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("DecayCurve: times must be strictly increasing");
  }
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

DecayCurve synthesize_response(const ModeAmplitudes& amp, std::span<const double> couplings,
                               std::span<const double> times) {
  amp.validate();
  if (couplings.size() != amp.ids.size())
    throw std::invalid_argument("synthesize_response: one coupling per mode required");
  DecayCurve curve;
  curve.model = ModelTag::Early;
  curve.times.assign(times.begin(), times.end());
  curve.values.resize(times.size());
  std::vector<double> terms(amp.ids.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t n = 0; n < amp.ids.size(); ++n)
      terms[n] = couplings[n] * amp.K1[n] * boundary_dH_dt(times[k], amp.kappa[n]);
    curve.values[k] = pairwise_sum(terms);
  }
  curve.validate();
  return curve;
}

PdeResidual pde_residual(const ProfileQuery& q, double h_t, double h_Z) {
  q.validate();
  if (!(h_t > 0.0) || !(h_Z > 0.0)) throw std::invalid_argument("step sizes must be > 0");
  if (!(q.t - h_t > 0.0) || !(q.Z + h_Z <= 0.0))
    throw std::invalid_argument("pde_residual: stencil leaves the interior");
  const auto H = [&](double Z, double t) { return profile_H({Z, t, q.kappa}); };
  const double dt = (H(q.Z, q.t + h_t) - H(q.Z, q.t - h_t)) / (2.0 * h_t);
  const double dzz = (H(q.Z + h_Z, q.t) - 2.0 * H(q.Z, q.t) + H(q.Z - h_Z, q.t)) / (h_Z * h_Z);
  return {dt - dzz, dt};
}

double boundary_condition_value(double t, double kappa, double h_Z) {
  check_time(t);
  check_kappa(kappa);
  if (!(h_Z > 0.0)) throw std::invalid_argument("h_Z must be > 0");
  const auto H = [&](double Z) { return profile_H({Z, t, kappa}); };
  // Second-order one-sided derivative from the interior side.
  const double dZ = (3.0 * H(0.0) - 4.0 * H(-h_Z) + H(-2.0 * h_Z)) / (2.0 * h_Z);
  return dZ + kappa * H(0.0);
}

} // namespace tdem
