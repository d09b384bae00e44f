#include "tdem/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tdem {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Below this argument erfcx is formed as exp(x^2) erfc(x); above it the
// continued fraction converges quickly.
constexpr double kErfcxSwitch = 2.0;

// Tail of the Laplace continued fraction
//   erfcx(x) = (1/sqrt(pi)) / (x + T),   T = (1/2)/(x + 1/(x + (3/2)/(x + ...)))
// evaluated with the modified Lentz method.
double erfc_cf_tail(double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double f = tiny;
  double C = f;
  double D = 0.0;
  for (int k = 1; k < 10000; ++k) {
    const double a = 0.5 * k;
    D = x + a * D;
    if (D == 0.0) D = tiny;
    C = x + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < eps) return f;
  }
  throw std::runtime_error("erfc continued fraction did not converge");
}

void check_bessel_args(int l_max, double x) {
  if (l_max < 0) throw std::invalid_argument("spherical_bessel_j: l_max must be >= 0");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("spherical_bessel_j: x must be finite and >= 0");
}

// j_l(x) = x^l/(2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
void bessel_series(int l_max, double x, std::vector<double>& out) {
  const double h = -0.5 * x * x;
  double prefactor = 1.0;
  for (int l = 0; l <= l_max; ++l) {
    if (l > 0) prefactor *= x / (2.0 * l + 1.0);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
      term *= h / (k * (2.0 * l + 2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    out[static_cast<std::size_t>(l)] = prefactor * sum;
  }
}

double closed_j0(double x) { return std::sin(x) / x; }
double closed_j1(double x) { return (std::sin(x) / x - std::cos(x)) / x; }
double closed_j2(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x) / x;
}

} // namespace

double erfc(double x) { return std::erfc(x); }

double erfcx(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("erfcx: x must be >= 0");
  if (std::isinf(x)) return 0.0;
  if (x < kErfcxSwitch) return std::exp(x * x) * std::erfc(x);
  return kInvSqrtPi / (x + erfc_cf_tail(x));
}

double erfcx_deficit(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("erfcx_deficit: x must be >= 0");
  if (std::isinf(x)) return 0.0;
  if (x < kErfcxSwitch) return kInvSqrtPi - x * erfcx(x);
  const double T = erfc_cf_tail(x);
  return kInvSqrtPi * T / (x + T);
}

std::vector<double> ierfc(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("ierfc: n_max must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  if (x <= 0.5) {
    // Forward recurrence i^n = (i^{n-2} - 2x i^{n-1}) / (2n) is stable here.
    double prev = 2.0 * kInvSqrtPi * std::exp(-x * x);  // i^{-1} erfc
    double cur = std::erfc(x);
    out[0] = cur;
    for (int n = 1; n <= n_max; ++n) {
      const double next = (prev - 2.0 * x * cur) / (2.0 * n);
      prev = cur;
      cur = next;
      out[static_cast<std::size_t>(n)] = cur;
    }
    return out;
  }
  // i^n erfc is the minimal solution for x > 0: Miller's backward recurrence
  // i^{n-1} = 2x i^n + 2(n+1) i^{n+1}, normalised by i^0 = erfc(x).
  // The unwanted solution dies off only like exp(-2x sqrt(2n)), so the start
  // depth grows as 1/x^2 (exp(-60) at the start).
  const int start = n_max + 40 + static_cast<int>(std::ceil(450.0 / (x * x)));
  double above = 0.0, cur = 1e-300;
  for (int n = start; n > 0; --n) {
    const double below = 2.0 * x * cur + 2.0 * (n + 1) * above;
    above = cur;
    cur = below;
    if (n - 1 <= n_max) out[static_cast<std::size_t>(n - 1)] = cur;
    if (std::abs(cur) > 1e250) {
      for (double& v : out) v *= 1e-250;
      cur *= 1e-250;
      above *= 1e-250;
    }
  }
  // Normalise with erfc(x) = erfcx(x) exp(-x^2) without overflowing.
  const double scale = erfcx(x) * std::exp(-x * x) / out[0];
  for (double& v : out) v *= scale;
  return out;
}

BesselEval spherical_bessel_j(int l_max, double x) {
  check_bessel_args(l_max, x);
  BesselEval r;
  r.l_max = l_max;
  r.x = x;
  r.values.assign(static_cast<std::size_t>(l_max) + 1, 0.0);
  auto& v = r.values;

  if (x == 0.0) {
    v[0] = 1.0;
    return r;
  }
  if (x < 0.5) {
    bessel_series(l_max, x, v);
    return r;
  }

  const double j0 = closed_j0(x);
  const double j1 = closed_j1(x);

  if (x > l_max) {
    // Upward recurrence is stable while l < x.
    v[0] = j0;
    if (l_max >= 1) v[1] = j1;
    for (int l = 1; l < l_max; ++l)
      v[static_cast<std::size_t>(l) + 1] = (2.0 * l + 1.0) / x * v[static_cast<std::size_t>(l)] -
                                           v[static_cast<std::size_t>(l) - 1];
  } else {
    // Miller: downward from an order well above both l_max and x, then
    // normalise against whichever of j_0, j_1 is larger in magnitude.
    const double top = std::max<double>(l_max, x);
    const int start = static_cast<int>(top) + 20 + static_cast<int>(std::sqrt(40.0 * top));
    double f_up = 0.0;
    double f = 1e-30;
    for (int l = start; l >= 1; --l) {
      if (l <= l_max) v[static_cast<std::size_t>(l)] = f;
      const double f_down = (2.0 * l + 1.0) / x * f - f_up;
      f_up = f;
      f = f_down;
      if (std::abs(f) > 1e250) {
        f *= 1e-250;
        f_up *= 1e-250;
        for (int k = l; k <= l_max; ++k) v[static_cast<std::size_t>(k)] *= 1e-250;
      }
    }
    v[0] = f;
    const double scale = std::abs(j0) >= std::abs(j1) ? j0 / v[0] : j1 / v[1];
    for (auto& e : v) e *= scale;
  }

  v[0] = j0;
  if (l_max >= 1) v[1] = j1;
  if (l_max >= 2) v[2] = closed_j2(x);
  return r;
}

double sph_j(int l, double x) { return spherical_bessel_j(l, x).values.back(); }

} // namespace tdem
