#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace tdem {

using Vec3 = Eigen::Vector3d;

/// Closed, consistently oriented triangle surface with outward normals.
/// Construct through SurfaceMesh::build, which validates topology and derives
/// the per-face and per-vertex geometry.
class SurfaceMesh {
 public:
  static SurfaceMesh build(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Vec3>& face_normals() const { return face_normals_; }
  const std::vector<Vec3>& vertex_normals() const { return vertex_normals_; }
  const std::vector<Vec3>& centroids() const { return centroids_; }
  const std::vector<double>& face_areas() const { return face_areas_; }
  /// Barycentric lumped areas (one third of each incident triangle).
  const std::vector<double>& vertex_areas() const { return vertex_areas_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_faces() const { return triangles_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  int euler_characteristic() const {
    return static_cast<int>(num_vertices()) - static_cast<int>(num_edges_) +
           static_cast<int>(num_faces());
  }
  double total_area() const;
  /// Enclosed volume (positive for outward orientation).
  double volume() const;
  Vec3 vertex_centroid() const;

  /// Mean distance of the vertices from their centroid, and the largest
  /// relative deviation from it.
  struct SphereFit {
    double radius;
    double max_relative_deviation;
  };
  SphereFit sphere_fit() const;
  bool is_sphere(double tolerance = 1e-3) const { return sphere_fit().max_relative_deviation < tolerance; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Vec3> face_normals_;
  std::vector<Vec3> vertex_normals_;
  std::vector<Vec3> centroids_;
  std::vector<double> face_areas_;
  std::vector<double> vertex_areas_;
  std::size_t num_edges_ = 0;
};

/// Subdivided icosahedron projected onto a sphere; 10 * 4^level + 2 vertices.
SurfaceMesh make_icosphere(double radius, int level);

/// OFF text format: "OFF", counts line "nv nf ne", vertex lines, face lines
/// "3 i j k". Only triangular faces are accepted.
SurfaceMesh read_off(std::istream& in);
SurfaceMesh read_off(const std::filesystem::path& path);
void write_off(std::ostream& out, const SurfaceMesh& mesh);

} // namespace tdem
