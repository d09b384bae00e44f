#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "tdem/core_model.hpp"
#include "tdem/early_time.hpp"
#include "tdem/sphere_exact.hpp"
#include "tdem/surface_mesh.hpp"

namespace tdem {

/// Dense operator acting on per-vertex point values.
struct SurfaceOperator {
  Eigen::MatrixXd matrix;
  std::string units;
  bool symmetric = false;
};

/// Cotangent weights W (W_ij = (cot a + cot b)/2 for an edge, rows summing to
/// zero), so that M^{-1} W approximates the Laplace-Beltrami operator.
Eigen::SparseMatrix<double> cotangent_weights(const SurfaceMesh& mesh);

/// Generalized surface Laplacian mu_c sqrt(D_c) M^{-1} W (on a sphere of radius
/// L_c this is -mu_c sqrt(D_c) L^2 / L_c^2). Units: m / s^{1/2} per m^2.
SurfaceOperator build_surface_laplacian(const SurfaceMesh& mesh, const TargetParams& p);

/// Boundary-integral pieces for piecewise-linear data, collocated at the
/// vertices, with the 1/(4 pi r) kernel:
///   single_layer(i, k)  = int phi_k(y) G(x_i, y) dS
///   double_layer(i, k)  = int phi_k(y) dG/dn_y(x_i, y) dS
/// where phi_k is the hat function of vertex k. Every entry is in closed form.
struct PanelOperators {
  Eigen::MatrixXd single_layer;
  Eigen::MatrixXd double_layer;
};

PanelOperators assemble_panel_operators(const SurfaceMesh& mesh);

/// Exterior Neumann-to-Dirichlet map on vertex values: given f = -n.grad(Phi)
/// returns Phi on the surface, with Phi harmonic outside and vanishing at
/// infinity. Direct formulation (c - K) Phi = S f, where the free term c is
/// fixed by the rigid-mode identity (c - K) 1 = 1. Units: m.
SurfaceOperator build_ntd_operator(const SurfaceMesh& mesh, const TargetParams& p);

/// Eigenpairs of the surface-mode operators on a mesh.
///
/// Scalar (alpha) modes: kappa psi = -(NtD) mu_b^{-1} L_Delta psi, kappa ascending,
/// constant mode removed. psi columns are mass-normalised; psi_dual holds left
/// eigenvectors scaled so psi_dual^T psi = I on distinct eigenvalues.
///
/// Transverse (beta) modes: lambda phi = -(mu_c sqrt(D_c))^{-1} Laplacian phi,
/// lambda ascending, constant removed, phi mass-orthonormal.
struct SurfaceModeBasis {
  std::vector<double> kappa;
  Eigen::MatrixXd psi;
  Eigen::MatrixXd psi_dual;
  std::vector<double> lambda;
  Eigen::MatrixXd phi;

  std::shared_ptr<const SurfaceMesh> mesh;
  TargetParams params;
  std::shared_ptr<const Eigen::MatrixXd> ntd;

  /// Diagnostics from the raw scalar solve.
  double zero_mode_kappa = 0.0;    ///< the discarded constant-mode eigenvalue
  double max_imag_ratio = 0.0;     ///< max |Im kappa| / |kappa| over reported modes
  int clamped_negative = 0;        ///< tiny negative kappa clamped to zero

  bool has_scalar() const { return !kappa.empty(); }
  bool has_transverse() const { return !lambda.empty(); }
};

SurfaceModeBasis solve_scalar_modes(const SurfaceMesh& mesh, const TargetParams& p, int n_modes);
SurfaceModeBasis solve_transverse_modes(const SurfaceMesh& mesh, const TargetParams& p, int n_modes);
/// Both families in one basis (needed for projections).
SurfaceModeBasis solve_surface_modes(const SurfaceMesh& mesh, const TargetParams& p, int n_modes);

/// Groups ascending eigenvalues whose consecutive relative gap is below rel_tol.
/// Returns a 0-based multiplet index per value.
std::vector<int> cluster_multiplets(std::span<const double> ascending, double rel_tol = 0.02);

/// Largest relative deviation of the sorted kappa from l / sqrt(tau_mag) over
/// the (2l+1)-sized blocks l = 1..l_max. Requires a sphere mesh of radius L_c.
std::vector<double> sphere_kappa_errors(const SurfaceModeBasis& basis, int l_max);

/// Tangential vector fields sampled at vertices.
using VertexField = std::vector<Vec3>;

/// Alpha-mode surface field -(mu_c sqrt(D_c) / kappa_n) n x grad psi_n.
VertexField alpha_mode_field(const SurfaceModeBasis& basis, int n);
/// Beta-mode surface field -grad phi_n.
VertexField beta_mode_field(const SurfaceModeBasis& basis, int n);

/// Weak-form surface curl n.curl(K) and divergence div_S(K) as point values.
Eigen::VectorXd surface_curl(const SurfaceMesh& mesh, const VertexField& K);
Eigen::VectorXd surface_divergence(const SurfaceMesh& mesh, const VertexField& K);

struct Projection {
  ModeAmplitudes amplitudes;   ///< ids are 0-based mode indices into the basis
  double relative_residual = 0.0;
};

/// Expands a tangential surface current in the alpha/beta basis. Rejects input
/// whose normal component exceeds normal_tolerance times the largest magnitude.
/// Vertex normals are area-weighted, so fields tangent to the true surface show a
/// normal part of order the mesh size; it is removed before projecting.
Projection project_surface_current(const SurfaceModeBasis& basis, const VertexField& K,
                                   double normal_tolerance = 5e-2);

/// Samples a sphere screening current on the vertices of a spherical mesh
/// (polar axis z through the mesh centroid). Rejects non-spherical meshes.
VertexField screening_current_on_mesh(const SurfaceMesh& mesh, const ScreeningCurrent& k);

} // namespace tdem
