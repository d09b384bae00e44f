#include "tdem/surface_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

#include "tdem/dense_eigen.hpp"
#include "tdem/errors.hpp"
#include "tdem/triangle_potential.hpp"

namespace tdem {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Gradient of the hat function of corner k on face f (constant on the face).
Vec3 hat_gradient(const SurfaceMesh& mesh, std::size_t f, int k) {
  const auto& t = mesh.triangles()[f];
  const Vec3& a = mesh.vertices()[t[(k + 1) % 3]];
  const Vec3& b = mesh.vertices()[t[(k + 2) % 3]];
  return mesh.face_normals()[f].cross(b - a) / (2.0 * mesh.face_areas()[f]);
}

Eigen::VectorXd mass_vector(const SurfaceMesh& mesh) {
  return Eigen::Map<const Eigen::VectorXd>(mesh.vertex_areas().data(),
                                           static_cast<Eigen::Index>(mesh.num_vertices()));
}

void check_mode_count(const SurfaceMesh& mesh, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
  if (static_cast<std::size_t>(n_modes) >= mesh.num_vertices())
    throw std::invalid_argument("n_modes must be below the vertex count");
}

// Face-averaged tangential vector, projected onto the face plane.
Vec3 face_mean(const SurfaceMesh& mesh, const VertexField& K, std::size_t f) {
  const auto& t = mesh.triangles()[f];
  Vec3 v = (K[t[0]] + K[t[1]] + K[t[2]]) / 3.0;
  const Vec3& n = mesh.face_normals()[f];
  return v - n * n.dot(v);
}

// Area-weighted average of per-face vectors at each vertex, projected onto
// the vertex tangent plane.
VertexField faces_to_vertices(const SurfaceMesh& mesh, const std::vector<Vec3>& per_face) {
  VertexField out(mesh.num_vertices(), Vec3::Zero());
  std::vector<double> w(mesh.num_vertices(), 0.0);
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    for (int i : mesh.triangles()[f]) {
      out[i] += mesh.face_areas()[f] * per_face[f];
      w[i] += mesh.face_areas()[f];
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] /= w[i];
    const Vec3& n = mesh.vertex_normals()[i];
    out[i] -= n * n.dot(out[i]);
  }
  return out;
}

std::vector<Vec3> face_gradients(const SurfaceMesh& mesh, const Eigen::Ref<const Eigen::VectorXd>& u) {
  std::vector<Vec3> g(mesh.num_faces());
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    Vec3 s = Vec3::Zero();
    for (int k = 0; k < 3; ++k) s += u[mesh.triangles()[f][k]] * hat_gradient(mesh, f, k);
    g[f] = s;
  }
  return g;
}

void require_scalar(const SurfaceModeBasis& b) {
  if (!b.has_scalar() || !b.mesh || !b.ntd) throw std::invalid_argument("basis has no scalar modes");
}

void require_transverse(const SurfaceModeBasis& b) {
  if (!b.has_transverse() || !b.mesh) throw std::invalid_argument("basis has no transverse modes");
}

} // namespace

Eigen::SparseMatrix<double> cotangent_weights(const SurfaceMesh& mesh) {
  const auto n = static_cast<Eigen::Index>(mesh.num_vertices());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.num_faces() * 12);
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const auto& t = mesh.triangles()[f];
    for (int k = 0; k < 3; ++k) {
      const int i = t[(k + 1) % 3];
      const int j = t[(k + 2) % 3];
      const Vec3 u = mesh.vertices()[i] - mesh.vertices()[t[k]];
      const Vec3 v = mesh.vertices()[j] - mesh.vertices()[t[k]];
      const double half_cot = 0.5 * u.dot(v) / u.cross(v).norm();
      trip.emplace_back(i, j, half_cot);
      trip.emplace_back(j, i, half_cot);
      trip.emplace_back(i, i, -half_cot);
      trip.emplace_back(j, j, -half_cot);
    }
  }
  Eigen::SparseMatrix<double> W(n, n);
  W.setFromTriplets(trip.begin(), trip.end());
  return W;
}

SurfaceOperator build_surface_laplacian(const SurfaceMesh& mesh, const TargetParams& p) {
  const DerivedTimescales d = derive_timescales(p);
  const double scale = p.mu_c * std::sqrt(d.D_c);
  const Eigen::VectorXd inv_mass = mass_vector(mesh).cwiseInverse();
  SurfaceOperator op;
  op.matrix = Eigen::MatrixXd(cotangent_weights(mesh));
  op.matrix = (scale * inv_mass).asDiagonal() * op.matrix;
  op.units = "m s^-1/2 / m^2";
  op.symmetric = false;
  return op;
}

PanelOperators assemble_panel_operators(const SurfaceMesh& mesh) {
  const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());
  const auto& tri = mesh.triangles();
  const auto& V = mesh.vertices();

  PanelOperators ops;
  ops.single_layer = Eigen::MatrixXd::Zero(nv, nv);
  ops.double_layer = Eigen::MatrixXd::Zero(nv, nv);
  for (std::size_t f = 0; f < tri.size(); ++f) {
    const Vec3& a = V[tri[f][0]];
    const Vec3& b = V[tri[f][1]];
    const Vec3& c = V[tri[f][2]];
    for (Eigen::Index i = 0; i < nv; ++i) {
      const LinearMoments mo = triangle_linear_moments(a, b, c, V[static_cast<std::size_t>(i)]);
      for (int k = 0; k < 3; ++k) {
        ops.single_layer(i, tri[f][k]) += mo.single[k] / kFourPi;
        ops.double_layer(i, tri[f][k]) += mo.dipole[k] / kFourPi;
      }
    }
  }
  return ops;
}

SurfaceOperator build_ntd_operator(const SurfaceMesh& mesh, const TargetParams& p) {
  p.validate();
  PanelOperators ops = assemble_panel_operators(mesh);
  Eigen::MatrixXd& system = ops.double_layer;
  // Free term: the exterior solid-angle fraction, 1 + (K 1)(x_i).
  const Eigen::VectorXd c = Eigen::VectorXd::Ones(system.rows()) + system.rowwise().sum();
  system = -system;
  system.diagonal() += c;
  solve_dense_inplace(system, ops.single_layer);

  SurfaceOperator op;
  op.matrix = std::move(ops.single_layer);
  op.units = "m";
  op.symmetric = false;
  return op;
}

std::vector<int> cluster_multiplets(std::span<const double> ascending, double rel_tol) {
  std::vector<int> id(ascending.size(), 0);
  int current = 0;
  for (std::size_t i = 1; i < ascending.size(); ++i) {
    const double prev = ascending[i - 1];
    if (ascending[i] - prev > rel_tol * std::abs(prev)) ++current;
    id[i] = current;
  }
  return id;
}

SurfaceModeBasis solve_scalar_modes(const SurfaceMesh& mesh, const TargetParams& p, int n_modes) {
  check_mode_count(mesh, n_modes);
  SurfaceModeBasis basis;
  basis.mesh = std::make_shared<const SurfaceMesh>(mesh);
  basis.params = p;

  const DerivedTimescales d = derive_timescales(p);
  auto ntd = std::make_shared<Eigen::MatrixXd>(build_ntd_operator(mesh, p).matrix);
  basis.ntd = ntd;

  const Eigen::VectorXd mass = mass_vector(mesh);
  const Eigen::SparseMatrix<double> W = cotangent_weights(mesh);
  const double scale = p.mu_c * std::sqrt(d.D_c) / p.mu_b;
  // L = -(NtD) mu_b^{-1} mu_c sqrt(D_c) M^{-1} W
  const Eigen::MatrixXd ntd_over_mass = (*ntd) * mass.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd L = -scale * (ntd_over_mass * W);

  const NonsymmetricEigen es = eigen_nonsymmetric(L, true);
  const Eigen::Index n = es.values.size();

  double max_abs = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) max_abs = std::max(max_abs, std::abs(es.values[k]));
  const double noise = 1e-8 * max_abs;

  // The constant vector spans the kernel; drop the eigenvalue closest to zero.
  Eigen::Index zero = 0;
  for (Eigen::Index k = 1; k < n; ++k)
    if (std::abs(es.values[k]) < std::abs(es.values[zero])) zero = k;
  basis.zero_mode_kappa = es.values[zero].real();
  if (std::abs(es.values[zero]) > noise) {
    std::ostringstream os;
    os << "surface-mode operator has no null mode (smallest |kappa| = " << std::abs(es.values[zero])
       << ")";
    throw NumericError(os.str());
  }

  std::vector<Eigen::Index> order;
  order.reserve(static_cast<std::size_t>(n) - 1);
  for (Eigen::Index k = 0; k < n; ++k)
    if (k != zero) order.push_back(k);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return es.values[a].real() < es.values[b].real();
  });

  // Work on whole multiplets so the dual basis is well defined, then truncate.
  std::vector<double> sorted(order.size());
  for (std::size_t m = 0; m < order.size(); ++m) sorted[m] = es.values[order[m]].real();
  const std::vector<int> group = cluster_multiplets(sorted);
  std::size_t n_work = static_cast<std::size_t>(n_modes);
  while (n_work < order.size() && group[n_work] == group[n_work - 1]) ++n_work;

  const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());
  Eigen::MatrixXd right(nv, static_cast<Eigen::Index>(n_work));
  Eigen::MatrixXd left(nv, static_cast<Eigen::Index>(n_work));
  for (std::size_t m = 0; m < n_work; ++m) {
    const Eigen::Index k = order[m];
    const std::complex<double> ev = es.values[k];
    const double ratio = std::abs(ev.imag()) / std::max(std::abs(ev), noise);
    if (m < static_cast<std::size_t>(n_modes)) basis.max_imag_ratio = std::max(basis.max_imag_ratio, ratio);
    if (ratio > 1e-6) {
      std::ostringstream os;
      os << "surface mode " << m << " has a complex eigenvalue " << ev.real() << " + " << ev.imag()
         << "i";
      throw NumericError(os.str());
    }
    // A near-real conjugate pair spans part of a degenerate multiplet: its real
    // and imaginary parts are both eigenvectors.
    const bool lower = ev.imag() < 0.0;
    Eigen::VectorXd v = lower ? Eigen::VectorXd(es.right.col(k).imag()) : Eigen::VectorXd(es.right.col(k).real());
    v /= std::sqrt(v.dot(mass.cwiseProduct(v)));
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    right.col(static_cast<Eigen::Index>(m)) = v;
    if (lower) left.col(static_cast<Eigen::Index>(m)) = es.left.col(k).imag();
    else left.col(static_cast<Eigen::Index>(m)) = es.left.col(k).real();
  }

  // Left vectors are only biorthogonal across distinct eigenvalues; inside a
  // (near-)degenerate multiplet rebuild the dual block explicitly.
  for (std::size_t begin = 0; begin < n_work;) {
    std::size_t end = begin + 1;
    while (end < n_work && group[end] == group[begin]) ++end;
    const auto b0 = static_cast<Eigen::Index>(begin);
    const auto w = static_cast<Eigen::Index>(end - begin);
    const Eigen::MatrixXd gram = right.middleCols(b0, w).transpose() * left.middleCols(b0, w);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible()) throw NumericError("left and right surface modes are not dual");
    left.middleCols(b0, w) = left.middleCols(b0, w) * lu.inverse();
    begin = end;
  }

  basis.kappa.resize(static_cast<std::size_t>(n_modes));
  for (int m = 0; m < n_modes; ++m) {
    double kap = sorted[static_cast<std::size_t>(m)];
    if (kap < 0.0) {
      if (-kap > noise) throw NumericError("negative surface-mode eigenvalue " + std::to_string(kap));
      kap = 0.0;
      ++basis.clamped_negative;
    }
    basis.kappa[static_cast<std::size_t>(m)] = kap;
  }
  basis.psi = right.leftCols(n_modes);
  basis.psi_dual = left.leftCols(n_modes);
  return basis;
}

SurfaceModeBasis solve_transverse_modes(const SurfaceMesh& mesh, const TargetParams& p, int n_modes) {
  check_mode_count(mesh, n_modes);
  SurfaceModeBasis basis;
  basis.mesh = std::make_shared<const SurfaceMesh>(mesh);
  basis.params = p;
  const DerivedTimescales d = derive_timescales(p);
  const double scale = 1.0 / (p.mu_c * std::sqrt(d.D_c));

  // -W phi = mu M phi  ->  symmetric  -M^{-1/2} W M^{-1/2}
  const Eigen::VectorXd inv_sqrt_mass = mass_vector(mesh).cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd B =
      -(inv_sqrt_mass.asDiagonal() * Eigen::MatrixXd(cotangent_weights(mesh)) * inv_sqrt_mass.asDiagonal());
  const SymmetricEigen es = eigen_symmetric(0.5 * (B + B.transpose()));

  const double top = es.values.cwiseAbs().maxCoeff();
  if (std::abs(es.values[0]) > 1e-8 * top)
    throw NumericError("transverse operator has no null mode");
  basis.lambda.resize(static_cast<std::size_t>(n_modes));
  basis.phi.resize(mesh.num_vertices(), n_modes);
  for (int m = 0; m < n_modes; ++m) {
    basis.lambda[static_cast<std::size_t>(m)] = scale * es.values[m + 1];
    Eigen::VectorXd v = inv_sqrt_mass.asDiagonal() * es.vectors.col(m + 1);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    basis.phi.col(m) = v;
  }
  return basis;
}

SurfaceModeBasis solve_surface_modes(const SurfaceMesh& mesh, const TargetParams& p, int n_modes) {
  SurfaceModeBasis basis = solve_scalar_modes(mesh, p, n_modes);
  SurfaceModeBasis tr = solve_transverse_modes(mesh, p, n_modes);
  basis.lambda = std::move(tr.lambda);
  basis.phi = std::move(tr.phi);
  return basis;
}

std::vector<double> sphere_kappa_errors(const SurfaceModeBasis& basis, int l_max) {
  require_scalar(basis);
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  const std::size_t needed = static_cast<std::size_t>((l_max + 1) * (l_max + 1) - 1);
  if (basis.kappa.size() < needed)
    throw std::invalid_argument("basis holds too few modes for l_max=" + std::to_string(l_max));
  const double k1 = sphere_kappa(basis.params, 1);
  std::vector<double> err;
  for (int l = 1; l <= l_max; ++l) {
    double e = 0.0;
    for (int i = l * l - 1; i < (l + 1) * (l + 1) - 1; ++i)
      e = std::max(e, std::abs(basis.kappa[static_cast<std::size_t>(i)] - l * k1) / (l * k1));
    err.push_back(e);
  }
  return err;
}

Eigen::VectorXd surface_curl(const SurfaceMesh& mesh, const VertexField& K) {
  if (K.size() != mesh.num_vertices()) throw std::invalid_argument("field size != vertex count");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_vertices()));
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const Vec3 kf = face_mean(mesh, K, f);
    const Vec3& n = mesh.face_normals()[f];
    for (int k = 0; k < 3; ++k)
      out[mesh.triangles()[f][k]] -= mesh.face_areas()[f] * n.cross(hat_gradient(mesh, f, k)).dot(kf);
  }
  return out.cwiseQuotient(mass_vector(mesh));
}

Eigen::VectorXd surface_divergence(const SurfaceMesh& mesh, const VertexField& K) {
  if (K.size() != mesh.num_vertices()) throw std::invalid_argument("field size != vertex count");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_vertices()));
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const Vec3 kf = face_mean(mesh, K, f);
    for (int k = 0; k < 3; ++k)
      out[mesh.triangles()[f][k]] -= mesh.face_areas()[f] * hat_gradient(mesh, f, k).dot(kf);
  }
  return out.cwiseQuotient(mass_vector(mesh));
}

VertexField alpha_mode_field(const SurfaceModeBasis& basis, int n) {
  require_scalar(basis);
  if (n < 0 || n >= static_cast<int>(basis.kappa.size())) throw std::invalid_argument("mode index out of range");
  const SurfaceMesh& mesh = *basis.mesh;
  const double kap = basis.kappa[static_cast<std::size_t>(n)];
  if (!(kap > 0.0)) throw std::invalid_argument("alpha mode with zero kappa");
  const DerivedTimescales d = derive_timescales(basis.params);
  const double scale = -basis.params.mu_c * std::sqrt(d.D_c) / kap;
  std::vector<Vec3> g = face_gradients(mesh, basis.psi.col(n));
  for (std::size_t f = 0; f < g.size(); ++f) g[f] = scale * mesh.face_normals()[f].cross(g[f]);
  return faces_to_vertices(mesh, g);
}

VertexField beta_mode_field(const SurfaceModeBasis& basis, int n) {
  require_transverse(basis);
  if (n < 0 || n >= static_cast<int>(basis.lambda.size())) throw std::invalid_argument("mode index out of range");
  const SurfaceMesh& mesh = *basis.mesh;
  std::vector<Vec3> g = face_gradients(mesh, basis.phi.col(n));
  for (auto& v : g) v = -v;
  return faces_to_vertices(mesh, g);
}

Projection project_surface_current(const SurfaceModeBasis& basis, const VertexField& K_in,
                                   double normal_tolerance) {
  require_scalar(basis);
  require_transverse(basis);
  const SurfaceMesh& mesh = *basis.mesh;
  if (K_in.size() != mesh.num_vertices()) throw std::invalid_argument("field size != vertex count");

  double peak = 0.0, worst_normal = 0.0;
  for (std::size_t i = 0; i < K_in.size(); ++i) {
    peak = std::max(peak, K_in[i].norm());
    worst_normal = std::max(worst_normal, std::abs(K_in[i].dot(mesh.vertex_normals()[i])));
  }
  if (worst_normal > normal_tolerance * peak)
    throw std::invalid_argument("surface current is not tangential (normal component " +
                                std::to_string(worst_normal) + " vs peak " + std::to_string(peak) + ")");
  VertexField K = K_in;
  for (std::size_t i = 0; i < K.size(); ++i) {
    const Vec3& n = mesh.vertex_normals()[i];
    K[i] -= n * n.dot(K[i]);
  }

  const DerivedTimescales d = derive_timescales(basis.params);
  const Eigen::VectorXd mass = mass_vector(mesh);
  const std::size_t n1 = basis.kappa.size(), n2 = basis.lambda.size();
  const std::size_t nm = std::max(n1, n2);

  Projection out;
  auto& amp = out.amplitudes;
  amp.ids.resize(nm);
  std::iota(amp.ids.begin(), amp.ids.end(), 0);
  amp.K1.assign(nm, 0.0);
  amp.K2.assign(nm, 0.0);
  amp.kappa.assign(nm, 0.0);

  // NtD mu_b^{-1} n.curl K = sum_n K1_n psi_n
  const Eigen::VectorXd s = (*basis.ntd) * surface_curl(mesh, K) / basis.params.mu_b;
  for (std::size_t n = 0; n < n1; ++n) {
    amp.K1[n] = basis.psi_dual.col(static_cast<Eigen::Index>(n)).dot(s);
    amp.kappa[n] = basis.kappa[n];
  }
  // (mu_c sqrt(D_c))^{-1} div_S K = sum_n lambda_n K2_n phi_n
  const Eigen::VectorXd dv = surface_divergence(mesh, K) / (basis.params.mu_c * std::sqrt(d.D_c));
  for (std::size_t n = 0; n < n2; ++n) {
    const auto col = basis.phi.col(static_cast<Eigen::Index>(n));
    amp.K2[n] = col.dot(mass.cwiseProduct(dv)) / basis.lambda[n];
  }

  VertexField rec(mesh.num_vertices(), Vec3::Zero());
  for (std::size_t n = 0; n < n1; ++n) {
    if (amp.K1[n] == 0.0 || !(basis.kappa[n] > 0.0)) continue;
    const VertexField a = alpha_mode_field(basis, static_cast<int>(n));
    for (std::size_t i = 0; i < rec.size(); ++i) rec[i] += amp.K1[n] * a[i];
  }
  for (std::size_t n = 0; n < n2; ++n) {
    if (amp.K2[n] == 0.0) continue;
    const VertexField b = beta_mode_field(basis, static_cast<int>(n));
    for (std::size_t i = 0; i < rec.size(); ++i) rec[i] += amp.K2[n] * b[i];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    num += mass[static_cast<Eigen::Index>(i)] * (K[i] - rec[i]).squaredNorm();
    den += mass[static_cast<Eigen::Index>(i)] * K[i].squaredNorm();
  }
  out.relative_residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return out;
}

VertexField screening_current_on_mesh(const SurfaceMesh& mesh, const ScreeningCurrent& k) {
  const auto fit = mesh.sphere_fit();
  if (fit.max_relative_deviation > 1e-3)
    throw std::invalid_argument("screening current needs a spherical mesh (radius deviation " +
                                std::to_string(fit.max_relative_deviation) + ")");
  const Vec3 c = mesh.vertex_centroid();
  VertexField out(mesh.num_vertices());
  const Vec3 z(0.0, 0.0, 1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec3 r = (mesh.vertices()[i] - c).normalized();
    const Vec3 az = z.cross(r);  // |az| = sin(theta), along phi-hat
    const double sin_theta = az.norm();
    out[i] = sin_theta > 0.0 ? Vec3(k.amplitude * az) : Vec3::Zero();
  }
  return out;
}

} // namespace tdem
