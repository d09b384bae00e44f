#pragma once

#include <array>

#include "tdem/surface_mesh.hpp"

namespace tdem {

/// Integral of 1/|P - y| over a flat triangle and its gradient with respect to P,
/// in closed form. Valid for any P not on the triangle's edges.
struct TrianglePotential {
  double potential = 0.0;
  Vec3 gradient = Vec3::Zero();
};

TrianglePotential triangle_potential(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& P);

/// Moments of the three linear hat functions (corners a, b, c) of a flat triangle:
///   single[k] = int lambda_k(y) / |P - y| dS
///   dipole[k] = int lambda_k(y) n.(P - y) / |P - y|^3 dS
/// with n the unit normal of (b - a) x (c - a). P may be a corner or lie on an
/// edge; when P is in the plane of the triangle dipole is zero.
struct LinearMoments {
  std::array<double, 3> single{};
  std::array<double, 3> dipole{};
};

LinearMoments triangle_linear_moments(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& P);

} // namespace tdem
