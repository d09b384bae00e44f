#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tdem/triangle_potential.hpp"

using namespace tdem;

namespace {

using boost::math::quadrature::gauss_kronrod;

// Integral over the triangle (a, b, c) of g(y, barycentric weights), in Duffy
// coordinates collapsed onto corner a: y = a + s[(1-w)(b-a) + w(c-a)].
// The Jacobian factor s cancels a 1/R singularity at a.
template <class G>
double duffy(const Vec3& a, const Vec3& b, const Vec3& c, G g) {
  const double J = (b - a).cross(c - a).norm();
  auto outer = [&](double s) {
    auto inner = [&](double w) {
      const Vec3 y = a + s * ((1.0 - w) * (b - a) + w * (c - a));
      const double lam[3] = {1.0 - s, s * (1.0 - w), s * w};
      return g(y, lam) * s * J;
    };
    return gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 12, 1e-13);
  };
  return gauss_kronrod<double, 31>::integrate(outer, 0.0, 1.0, 12, 1e-13);
}

// Splits the triangle at P's projection so every piece has P's foot at a corner.
template <class G>
double integrate_split(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& P, G g) {
  const Vec3 n = (b - a).cross(c - a).normalized();
  const Vec3 rho = P - n * n.dot(P - a);
  const Vec3 v[3] = {a, b, c};
  const double area = (b - a).cross(c - a).norm();
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec3& p = v[k];
    const Vec3& q = v[(k + 1) % 3];
    const double signed_area = (p - rho).cross(q - rho).dot(n);
    if (std::abs(signed_area) < 1e-14 * area) continue;
    // Barycentric weights of the parent triangle at y.
    auto bary = [&](const Vec3& y) {
      const double la = (b - y).cross(c - y).dot(n) / area;
      const double lb = (c - y).cross(a - y).dot(n) / area;
      return std::array<double, 3>{la, lb, 1.0 - la - lb};
    };
    auto h = [&](const Vec3& y, const double*) {
      const auto l = bary(y);
      return g(y, l.data());
    };
    sum += (signed_area > 0 ? 1.0 : -1.0) * duffy(rho, p, q, h);
  }
  return sum;
}

const Vec3 A(0.1, -0.2, 0.05), B(1.3, 0.1, -0.1), C(0.3, 0.9, 0.2);

} // namespace

TEST_CASE("constant-density potential and gradient against quadrature") {
  const Vec3 n = (B - A).cross(C - A).normalized();
  const Vec3 cen = (A + B + C) / 3.0;
  for (const Vec3& P : {Vec3(cen), Vec3(cen + 0.3 * n), Vec3(cen - 0.01 * n), Vec3(2.0, 1.5, -0.7),
                        Vec3(A + 0.2 * (B - A) + 0.05 * n), Vec3(10.0, -3.0, 4.0)}) {
    const TrianglePotential tp = triangle_potential(A, B, C, P);
    const double I = integrate_split(A, B, C, P, [&](const Vec3& y, const double*) { return 1.0 / (P - y).norm(); });
    CHECK(tp.potential == doctest::Approx(I).epsilon(1e-10));
    for (int d = 0; d < 3; ++d) {
      const double gd = integrate_split(A, B, C, P, [&](const Vec3& y, const double*) {
        const Vec3 r = y - P;
        return r[d] / std::pow(r.norm(), 3);
      });
      if (std::abs(n.dot(P - A)) > 1e-12 || std::abs(gd) > 1e-8)
        CHECK(tp.gradient[d] == doctest::Approx(gd).epsilon(1e-8).scale(1e-6));
    }
  }
}

TEST_CASE("linear moments against quadrature, including corner and edge points") {
  const Vec3 n = (B - A).cross(C - A).normalized();
  for (const Vec3& P : {Vec3(A), Vec3(B), Vec3(0.5 * (A + C)), Vec3((A + B + C) / 3.0),
                        Vec3((A + B + C) / 3.0 + 0.2 * n), Vec3(B + 0.05 * n + 0.1 * (B - C)),
                        Vec3(-1.0, 2.0, 0.5)}) {
    const LinearMoments mo = triangle_linear_moments(A, B, C, P);
    const double h = n.dot(P - A);
    for (int k = 0; k < 3; ++k) {
      const double s = integrate_split(A, B, C, P, [&](const Vec3& y, const double* lam) {
        return lam[k] / (P - y).norm();
      });
      CAPTURE(k);
      CHECK(mo.single[k] == doctest::Approx(s).epsilon(1e-10));
      if (std::abs(h) < 1e-12) {
        CHECK(mo.dipole[k] == 0.0);
      } else {
        const double d = integrate_split(A, B, C, P, [&](const Vec3& y, const double* lam) {
          const Vec3 r = P - y;
          return lam[k] * n.dot(r) / std::pow(r.norm(), 3);
        });
        CHECK(mo.dipole[k] == doctest::Approx(d).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("linear moments sum to the constant-density integrals") {
  const Vec3 n = (B - A).cross(C - A).normalized();
  for (const Vec3& P : {Vec3(0.4, 0.3, 0.8), Vec3(A + 0.3 * n), Vec3(-2.0, 0.0, 0.0)}) {
    const LinearMoments mo = triangle_linear_moments(A, B, C, P);
    const TrianglePotential tp = triangle_potential(A, B, C, P);
    CHECK(mo.single[0] + mo.single[1] + mo.single[2] == doctest::Approx(tp.potential).epsilon(1e-13));
    CHECK(mo.dipole[0] + mo.dipole[1] + mo.dipole[2] == doctest::Approx(-n.dot(tp.gradient)).epsilon(1e-12));
  }
}

TEST_CASE("solid angle of a closed surface from the dipole moments") {
  // A tetrahedron seen from an interior point subtends 4 pi.
  const Vec3 v[4] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const int f[4][3] = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  const Vec3 inside(0.2, 0.2, 0.2), outside(2.0, 1.0, 1.0);
  double w_in = 0.0, w_out = 0.0;
  for (const auto& t : f) {
    const auto a = triangle_linear_moments(v[t[0]], v[t[1]], v[t[2]], inside);
    const auto b = triangle_linear_moments(v[t[0]], v[t[1]], v[t[2]], outside);
    for (int k = 0; k < 3; ++k) {
      w_in += a.dipole[k];
      w_out += b.dipole[k];
    }
  }
  CHECK(w_in == doctest::Approx(-4.0 * M_PI).epsilon(1e-12));
  CHECK(w_out == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}
