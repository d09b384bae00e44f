#pragma once

#include <vector>

namespace tdem {

/// Complementary error function.
double erfc(double x);

/// Scaled complementary error function exp(x^2) erfc(x), x >= 0.
/// Never forms exp(x^2) for large arguments.
double erfcx(double x);

/// 1/sqrt(pi) - x erfcx(x), x >= 0, evaluated without cancellation at large x
/// (it decays like 1/(2 sqrt(pi) x^2)). This is the combination that appears in
/// the time derivative of the boundary trace.
double erfcx_deficit(double x);

/// Repeated integrals of erfc: returns i^n erfc(x) for n = 0..n_max, where
/// i^0 erfc = erfc. Forward recurrence; intended for moderate x.
std::vector<double> ierfc(int n_max, double x);

/// Spherical Bessel functions of the first kind at one argument.
struct BesselEval {
  int l_max = 0;
  double x = 0.0;
  std::vector<double> values;  ///< j_0(x) .. j_{l_max}(x)

  double operator[](int l) const { return values[static_cast<std::size_t>(l)]; }
};

/// All orders j_0..j_{l_max} at x >= 0.
BesselEval spherical_bessel_j(int l_max, double x);

/// Single order j_l(x).
double sph_j(int l, double x);

} // namespace tdem
