#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tdem/specfun.hpp"

using namespace tdem;
using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;

namespace {

double big_erfc(double x) { return static_cast<double>(boost::multiprecision::erfc(Big(x))); }

// Asymptotic series of e^{x^2} erfc(x) sqrt(pi) x, summed in 50 digits; for
// x >= 1e3 the terms fall below 1e-50 well before the series diverges.
Big big_asymptotic_sum(double x, int first) {
  const Big inv = 1 / (2 * Big(x) * Big(x));
  Big term = 1, sum = first == 0 ? Big(1) : Big(0);
  for (int k = 1; k < 20; ++k) {
    term *= -(2 * k - 1) * inv;
    sum += term;
  }
  return sum;
}

double big_erfcx(double x) {
  if (x >= 1e3)
    return static_cast<double>(big_asymptotic_sum(x, 0) / (Big(x) * boost::multiprecision::sqrt(boost::math::constants::pi<Big>())));
  const Big b(x);
  return static_cast<double>(boost::multiprecision::exp(b * b) * boost::multiprecision::erfc(b));
}

double big_deficit(double x) {
  if (x >= 1e3)
    return static_cast<double>(-big_asymptotic_sum(x, 1) / boost::multiprecision::sqrt(boost::math::constants::pi<Big>()));
  const Big b(x);
  const Big e = boost::multiprecision::exp(b * b) * boost::multiprecision::erfc(b);
  return static_cast<double>(1 / boost::multiprecision::sqrt(boost::math::constants::pi<Big>()) - b * e);
}

// i^n erfc(x) = (2/sqrt(pi)) int_x^inf (t - x)^n / n! exp(-t^2) dt
double ierfc_quadrature(int n, double x) {
  boost::math::quadrature::exp_sinh<double> q;
  const double fact = std::tgamma(n + 1.0);
  auto f = [&](double s) {
    if (s > 40.0) return 0.0;
    return std::pow(s, n) / fact * std::exp(-(x + s) * (x + s));
  };
  return 2.0 / std::sqrt(std::numbers::pi) * q.integrate(f);
}

} // namespace

TEST_CASE("erfc against a 50-digit reference") {
  for (double x : {0.0, 1e-8, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 10.0, 20.0, 26.0}) {
    const double ref = big_erfc(x);
    CHECK(tdem::erfc(x) == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("erfcx against a 50-digit reference across the branch switch") {
  for (double x : {0.0, 1e-6, 0.3, 1.0, 1.9, 1.999, 2.0, 2.001, 2.5, 4.0, 8.0, 30.0, 1e3, 1e6, 1e10}) {
    CAPTURE(x);
    CHECK(erfcx(x) == doctest::Approx(big_erfcx(x)).epsilon(2e-14));
  }
}

TEST_CASE("erfcx never overflows and decays like 1/(sqrt(pi) x)") {
  for (double x : {1e50, 1e150, 1e300}) {
    const double v = erfcx(x);
    CHECK(std::isfinite(v));
    CHECK(v * x * std::sqrt(std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("erfcx_deficit keeps full relative accuracy at large argument") {
  for (double x : {0.0, 0.5, 1.5, 2.0, 3.0, 10.0, 100.0, 1e4, 1e7}) {
    CAPTURE(x);
    CHECK(erfcx_deficit(x) == doctest::Approx(big_deficit(x)).epsilon(5e-14));
  }
}

TEST_CASE("erfcx_deficit is positive and decreasing") {
  double prev = erfcx_deficit(0.0);
  for (double x = 0.01; x < 1e3; x *= 1.3) {
    const double v = erfcx_deficit(x);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("repeated erfc integrals against quadrature") {
  for (double x : {0.0, 0.2, 0.5, 0.8, 1.5, 3.0, 6.0}) {
    const auto v = ierfc(6, x);
    for (int n = 0; n <= 6; ++n) {
      CAPTURE(x);
      CAPTURE(n);
      CHECK(v[static_cast<std::size_t>(n)] == doctest::Approx(ierfc_quadrature(n, x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("repeated erfc integrals at zero have the closed form") {
  // i^n erfc(0) = 1 / (2^n Gamma(1 + n/2))
  const auto v = ierfc(8, 0.0);
  for (int n = 0; n <= 8; ++n)
    CHECK(v[static_cast<std::size_t>(n)] ==
          doctest::Approx(1.0 / (std::pow(2.0, n) * std::tgamma(1.0 + 0.5 * n))).epsilon(1e-14));
}

TEST_CASE("spherical Bessel functions against Boost") {
  for (double x : {1e-8, 1e-3, 0.2, 0.49, 0.51, 1.0, 3.0, 7.5, 15.0, 40.0, 120.0, 1e3}) {
    const BesselEval j = spherical_bessel_j(12, x);
    for (int l = 0; l <= 12; ++l) {
      const double ref = static_cast<double>(boost::math::sph_bessel(l, static_cast<long double>(x)));
      CAPTURE(x);
      CAPTURE(l);
      CHECK(j[l] == doctest::Approx(ref).epsilon(1e-12).scale(1e-300));
    }
  }
}

TEST_CASE("spherical Bessel functions near zeros keep absolute accuracy") {
  // j_1 and j_2 near the zeros of j_0 and j_1.
  for (double x : {std::numbers::pi, 2 * std::numbers::pi, 4.493409457909064, 7.725251836937707}) {
    const BesselEval j = spherical_bessel_j(6, x);
    for (int l = 0; l <= 6; ++l) {
      const double ref = static_cast<double>(boost::math::sph_bessel(l, static_cast<long double>(x)));
      CHECK(std::abs(j[l] - ref) < 1e-15);
    }
  }
}

TEST_CASE("sph_j matches the table and j_l(0)") {
  CHECK(sph_j(3, 2.5) == doctest::Approx(spherical_bessel_j(3, 2.5)[3]));
  CHECK(sph_j(0, 0.0) == 1.0);
  CHECK(sph_j(4, 0.0) == 0.0);
}

TEST_CASE("spherical Bessel rejects bad arguments") {
  CHECK_THROWS_AS(spherical_bessel_j(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(spherical_bessel_j(2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ierfc(-1, 1.0), std::invalid_argument);
}
