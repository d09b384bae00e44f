#include "tdem/sphere_exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tdem/errors.hpp"
#include "tdem/specfun.hpp"

namespace tdem {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(int l, double mu_ratio) {
  if (l < 1) throw std::invalid_argument("multipole order l must be >= 1");
  if (!(mu_ratio > 0.0) || !std::isfinite(mu_ratio))
    throw std::invalid_argument("mu_ratio must be finite and > 0");
}

// Asymptotically a_n/zeta_n^2 -> 1/(zeta_n^2 + c^2) with c = l (mu_c/mu_b - 1)
// and roots spaced by pi; the sum over n > N is then bounded by
// (1/pi) * integral_{zeta_N}^inf weight(zeta) / (zeta^2 + c^2) d zeta.
double tail_integral(double zeta_last, double c) {
  c = std::abs(c);
  if (c < 1e-12 * zeta_last) return 1.0 / (kPi * zeta_last);
  return (0.5 * kPi - std::atan(zeta_last / c)) / (kPi * c);
}

} // namespace

double decay_rate_residual(int l, double mu_ratio, double zeta) {
  const BesselEval j = spherical_bessel_j(l, zeta);
  const double inv = 1.0 / mu_ratio;
  return inv * zeta * j[l - 1] + l * (1.0 - inv) * j[l];
}

double decay_rate_residual_derivative(int l, double mu_ratio, double zeta) {
  const BesselEval j = spherical_bessel_j(l + 1, zeta);
  const double inv = 1.0 / mu_ratio;
  // d/dz [z j_{l-1}] = l j_{l-1} - z j_l ;  j_l' = (l/z) j_l - j_{l+1}
  const double d_first = l * j[l - 1] - zeta * j[l];
  const double d_second = (l / zeta) * j[l] - j[l + 1];
  return inv * d_first + l * (1.0 - inv) * d_second;
}

SphereSpectrum find_roots(int l, double mu_ratio, int n_roots) {
  check_order(l, mu_ratio);
  if (n_roots < 1) throw std::invalid_argument("n_roots must be >= 1");

  SphereSpectrum spec;
  spec.l = l;
  spec.mu_ratio = mu_ratio;
  spec.roots.reserve(static_cast<std::size_t>(n_roots));

  const auto f = [&](double z) { return decay_rate_residual(l, mu_ratio, z); };

  const double step = kPi / 8.0;
  const double z_lo = 1e-3;
  const double z_hi = (n_roots + 2) * kPi + l;

  double a = z_lo;
  double fa = f(a);
  while (static_cast<int>(spec.roots.size()) < n_roots && a < z_hi) {
    const double b = std::min(a + step, z_hi);
    const double fb = f(b);
    if (fa == 0.0 || fa * fb < 0.0 || fb == 0.0) {
      double lo = a, hi = b, flo = fa;
      if (fb == 0.0) {
        lo = hi = b;
      } else if (fa == 0.0) {
        hi = lo;
      }
      while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      // Newton polish, kept inside the bracket.
      const double bl = lo, bh = hi;
      double z = 0.5 * (lo + hi);
      for (int it = 0; it < 50; ++it) {
        const double fz = f(z);
        if (fz == 0.0) break;
        const double dz = fz / decay_rate_residual_derivative(l, mu_ratio, z);
        double next = z - dz;
        if (!(next >= bl - 1e-6) || !(next <= bh + 1e-6)) next = 0.5 * (bl + bh);
        const bool done = std::abs(next - z) <= 4.0 * std::numeric_limits<double>::epsilon() * z;
        z = next;
        if (done) break;
      }
      // Skip a repeated root when the previous bracket already captured it.
      if (spec.roots.empty() || z - spec.roots.back() > 1e-8) spec.roots.push_back(z);
      if (fb == 0.0) {
        a = b + 1e-9;
        fa = f(a);
        continue;
      }
    }
    a = b;
    fa = fb;
  }

  if (static_cast<int>(spec.roots.size()) < n_roots) {
    std::ostringstream os;
    os << "find_roots(l=" << l << ", mu_ratio=" << mu_ratio << "): isolated only "
       << spec.roots.size() << " of " << n_roots << " roots scanning (" << z_lo << ", " << z_hi
       << "]";
    throw NumericError(os.str());
  }

  spec.coefficients.reserve(spec.roots.size());
  for (std::size_t n = 0; n < spec.roots.size(); ++n) {
    const double z = spec.roots[n];
    const BesselEval j = spherical_bessel_j(l + 1, z);
    const double num = j[l] * j[l];
    const double den = num - j[l + 1] * j[l - 1];
    if (!(std::abs(den) > 1e-300) || !(num / den > 0.0)) {
      std::ostringstream os;
      os << "degenerate series coefficient at root " << n + 1 << " (zeta=" << z
         << ", l=" << l << ", mu_ratio=" << mu_ratio << "): j_l^2=" << num
         << ", denominator=" << den;
      throw NumericError(os.str());
    }
    spec.coefficients.push_back(num / den);
  }
  return spec;
}

SeriesValue H_l(const SphereSpectrum& spec, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("H_l: tau must be >= 0");
  if (spec.roots.empty()) throw std::invalid_argument("H_l: empty spectrum");
  // Smallest terms first.
  double sum = 0.0;
  for (std::size_t k = spec.roots.size(); k-- > 0;) {
    const double z2 = spec.roots[k] * spec.roots[k];
    sum += spec.coefficients[k] * std::exp(-z2 * tau) / z2;
  }
  const double zN = spec.roots.back();
  const double c = spec.l * (spec.mu_ratio - 1.0);
  return {sum, std::exp(-zN * zN * tau) * tail_integral(zN, c)};
}

SeriesValue minus_dH_l_dtau(const SphereSpectrum& spec, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("minus_dH_l_dtau: tau must be > 0");
  if (spec.roots.empty()) throw std::invalid_argument("minus_dH_l_dtau: empty spectrum");
  double sum = 0.0;
  for (std::size_t k = spec.roots.size(); k-- > 0;) {
    const double z = spec.roots[k];
    sum += spec.coefficients[k] * std::exp(-z * z * tau);
  }
  // a_n <= 1 asymptotically: tail <= (1/pi) int_{zeta_N}^inf exp(-z^2 tau) dz
  const double zN = spec.roots.back();
  const double bound = std::erfc(zN * std::sqrt(tau)) / (2.0 * std::sqrt(kPi * tau));
  return {sum, bound};
}

double H_l_truncated(const SphereSpectrum& spec, double tau, int n_terms) {
  if (!(tau >= 0.0)) throw std::invalid_argument("H_l_truncated: tau must be >= 0");
  if (n_terms < 1 || static_cast<std::size_t>(n_terms) > spec.roots.size())
    throw std::invalid_argument("H_l_truncated: n_terms out of range");
  double sum = 0.0;
  for (int k = n_terms; k-- > 0;) {
    const double z2 = spec.roots[static_cast<std::size_t>(k)] * spec.roots[static_cast<std::size_t>(k)];
    sum += spec.coefficients[static_cast<std::size_t>(k)] * std::exp(-z2 * tau) / z2;
  }
  return sum;
}

double H_l_zero(int l, double mu_ratio) {
  check_order(l, mu_ratio);
  const double inv = 1.0 / mu_ratio;
  return 0.5 * inv / (l + (l + 1) * inv);
}

double sphere_kappa(const TargetParams& p, int l) {
  if (l < 1) throw std::invalid_argument("sphere_kappa: l must be >= 1");
  const DerivedTimescales d = derive_timescales(p);
  return l / std::sqrt(d.tau_mag);
}

std::vector<SphereModeLabels> sphere_mode_labels(const TargetParams& p, int l_max) {
  if (l_max < 1) throw std::invalid_argument("sphere_mode_labels: l_max must be >= 1");
  const DerivedTimescales d = derive_timescales(p);
  const double kappa1 = 1.0 / std::sqrt(d.tau_mag);
  const double lambda_scale = 1.0 / (p.L_c * p.L_c * p.mu_c * std::sqrt(d.D_c));
  std::vector<SphereModeLabels> out;
  out.reserve(static_cast<std::size_t>((l_max + 1) * (l_max + 1) - 1));
  for (int l = 1; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      SphereModeLabels s;
      s.l = l;
      s.m = m;
      s.kappa = l * kappa1;
      s.lambda = l * (l + 1.0) * lambda_scale;
      s.length = p.L_c / l;
      out.push_back(s);
    }
  }
  return out;
}

double ScreeningCurrent::K_phi(double theta) const { return amplitude * std::sin(theta); }

ScreeningCurrent initial_screening_sphere(const TargetParams& p, double H0) {
  p.validate();
  if (!std::isfinite(H0)) throw std::invalid_argument("H0 must be finite");
  // -n.grad(Phi) = (mu_c/mu_b) H0 cos(theta) on r = a gives
  // Phi = (mu_c/mu_b) H0 a^3 cos(theta) / (2 r^2), so just outside
  // H_theta = (mu_c/mu_b) H0 sin(theta)/2 while inside H_theta = -H0 sin(theta).
  ScreeningCurrent k;
  k.amplitude = (1.0 + 0.5 * p.mu_ratio()) * H0;
  k.radius = p.L_c;
  return k;
}

} // namespace tdem
