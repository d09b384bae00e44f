#include "tdem/triangle_potential.hpp"

#include <array>
#include <cmath>

namespace tdem {

namespace {

// Per-edge pieces of the closed-form panel integrals for an edge p0 -> p1.
//   f    = int dl / R                (log form without cancellation)
//   g    = int R dl
//   beta = signed plane angle term
// `singular` marks P lying on the edge segment, where f diverges; d = 0 there
// and every term that uses f carries a vanishing factor.
struct EdgeTerms {
  Vec3 m;
  double d = 0.0;
  double f = 0.0;
  double g = 0.0;
  double beta = 0.0;
  bool singular = false;
};

EdgeTerms edge_terms(const Vec3& p0, const Vec3& p1, const Vec3& n, const Vec3& P, double h) {
  EdgeTerms e;
  const Vec3 edge = p1 - p0;
  const double len = edge.norm();
  const Vec3 t = edge / len;
  e.m = t.cross(n);
  const double s_minus = (p0 - P).dot(t);
  const double s_plus = (p1 - P).dot(t);
  e.d = (p0 - P).dot(e.m);
  const double R_minus = (p0 - P).norm();
  const double R_plus = (p1 - P).norm();
  const double R0sq = e.d * e.d + h * h;
  const double tiny = 1e-12 * len;

  // (R+s)(R-s) = R0^2 at both ends; pick the form without cancellation.
  const double num = s_plus + s_minus >= 0.0 ? R_plus + s_plus : R_minus - s_minus;
  const double den = s_plus + s_minus >= 0.0 ? R_minus + s_minus : R_plus - s_plus;
  if (std::sqrt(R0sq) < tiny && s_minus <= tiny && s_plus >= -tiny) {
    e.singular = true;
    e.d = 0.0;
  } else {
    e.f = std::log(num / den);
  }
  e.g = 0.5 * (s_plus * R_plus - s_minus * R_minus + (e.singular ? 0.0 : R0sq * e.f));

  const double abs_h = std::abs(h);
  if (std::abs(e.d) > 1e-14 * len) {
    e.beta = std::atan(e.d * s_plus / (R0sq + abs_h * R_plus)) -
             std::atan(e.d * s_minus / (R0sq + abs_h * R_minus));
  }
  return e;
}

} // namespace

// Edge decomposition of the flat-panel 1/R integral:
//   I = sum_i d_i f_i - |h| sum_i beta_i
//   grad I = -sum_i m_i f_i - sign(h) n sum_i beta_i
// with, per edge i, outward in-plane normal m_i, signed distance d_i from the
// projection of P to the edge line, f_i = ln((R+ + s+)/(R- + s-)) and
// beta_i = atan(d s+/(R0^2 + |h| R+)) - atan(d s-/(R0^2 + |h| R-)).
TrianglePotential triangle_potential(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& P) {
  const Vec3 n = (b - a).cross(c - a).normalized();
  const double h = (P - a).dot(n);
  const double sign_h = h > 0.0 ? 1.0 : (h < 0.0 ? -1.0 : 0.0);
  const std::array<const Vec3*, 3> v = {&a, &b, &c};
  double sum_df = 0.0, sum_beta = 0.0;
  Vec3 tangential = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const EdgeTerms e = edge_terms(*v[i], *v[(i + 1) % 3], n, P, h);
    sum_df += e.d * e.f;
    sum_beta += e.beta;
    tangential -= e.m * e.f;
  }
  TrianglePotential out;
  out.potential = sum_df - std::abs(h) * sum_beta;
  out.gradient = tangential - sign_h * sum_beta * n;
  return out;
}

// Linear densities reduce to the constant-density integrals plus in-plane
// first moments, which the surface divergence theorem turns into edge terms:
//   int (y - rho) / R   dS =  sum_i m_i g_i
//   int (y - rho) / R^3 dS = -sum_i m_i f_i
// where rho is the projection of P onto the plane.
LinearMoments triangle_linear_moments(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& P) {
  const Vec3 cr = (b - a).cross(c - a);
  const double twice_area = cr.norm();
  const Vec3 n = cr / twice_area;
  const double scale = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  double h = (P - a).dot(n);
  if (std::abs(h) < 1e-12 * scale) h = 0.0;
  const double abs_h = std::abs(h);
  const double sign_h = h > 0.0 ? 1.0 : (h < 0.0 ? -1.0 : 0.0);
  const Vec3 rho = P - h * n;

  const std::array<const Vec3*, 3> v = {&a, &b, &c};
  double sum_df = 0.0, sum_beta = 0.0;
  Vec3 moment1 = Vec3::Zero();  // int (y - rho)/R
  Vec3 moment3 = Vec3::Zero();  // int (y - rho)/R^3
  for (int i = 0; i < 3; ++i) {
    const EdgeTerms e = edge_terms(*v[i], *v[(i + 1) % 3], n, P, h);
    sum_df += e.d * e.f;
    sum_beta += e.beta;
    moment1 += e.m * e.g;
    moment3 -= e.m * e.f;
  }
  const double I = sum_df - abs_h * sum_beta;
  const double I3h = sign_h * sum_beta;  // h int 1/R^3

  LinearMoments out;
  for (int k = 0; k < 3; ++k) {
    const Vec3& p1 = *v[(k + 1) % 3];
    const Vec3& p2 = *v[(k + 2) % 3];
    const Vec3 grad = n.cross(p2 - p1) / twice_area;
    const double lam = 1.0 + grad.dot(rho - *v[k]);
    out.single[k] = lam * I + grad.dot(moment1);
    out.dipole[k] = h == 0.0 ? 0.0 : lam * I3h + h * grad.dot(moment3);
  }
  return out;
}

} // namespace tdem
