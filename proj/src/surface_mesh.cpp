#include "tdem/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tdem/errors.hpp"

namespace tdem {

SurfaceMesh SurfaceMesh::build(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles) {
  const int nv = static_cast<int>(vertices.size());
  if (nv < 4 || triangles.size() < 4) throw std::invalid_argument("mesh: too few vertices or faces");
  for (const auto& t : triangles)
    for (int i : t)
      if (i < 0 || i >= nv) throw std::invalid_argument("mesh: vertex index out of range");

  // Every directed edge once, and its reverse present exactly once.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const std::pair<int, int> e{t[k], t[(k + 1) % 3]};
      if (e.first == e.second) throw std::invalid_argument("mesh: degenerate triangle");
      if (++directed[e] > 1)
        throw std::invalid_argument("mesh: inconsistent winding or non-manifold edge (" +
                                    std::to_string(e.first) + "," + std::to_string(e.second) + ")");
    }
  }
  for (const auto& [e, count] : directed) {
    (void)count;
    if (!directed.count({e.second, e.first}))
      throw std::invalid_argument("mesh: open boundary at edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ")");
  }

  SurfaceMesh m;
  m.num_edges_ = directed.size() / 2;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);

  // Orient outward.
  double vol6 = 0.0;
  for (const auto& t : m.triangles_)
    vol6 += m.vertices_[t[0]].dot(m.vertices_[t[1]].cross(m.vertices_[t[2]]));
  if (vol6 < 0.0)
    for (auto& t : m.triangles_) std::swap(t[1], t[2]);

  const std::size_t nf = m.triangles_.size();
  m.face_normals_.resize(nf);
  m.face_areas_.resize(nf);
  m.centroids_.resize(nf);
  m.vertex_areas_.assign(m.vertices_.size(), 0.0);
  m.vertex_normals_.assign(m.vertices_.size(), Vec3::Zero());
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& t = m.triangles_[f];
    const Vec3& a = m.vertices_[t[0]];
    const Vec3& b = m.vertices_[t[1]];
    const Vec3& c = m.vertices_[t[2]];
    const Vec3 cr = (b - a).cross(c - a);
    const double area = 0.5 * cr.norm();
    if (!(area > 0.0)) throw std::invalid_argument("mesh: zero-area triangle " + std::to_string(f));
    m.face_areas_[f] = area;
    m.face_normals_[f] = cr / (2.0 * area);
    m.centroids_[f] = (a + b + c) / 3.0;
    for (int i : t) {
      m.vertex_areas_[i] += area / 3.0;
      m.vertex_normals_[i] += cr;  // area weighted
    }
  }
  for (auto& n : m.vertex_normals_) n.normalize();
  return m;
}

double SurfaceMesh::total_area() const {
  double s = 0.0;
  for (double a : face_areas_) s += a;
  return s;
}

double SurfaceMesh::volume() const {
  double vol6 = 0.0;
  for (const auto& t : triangles_) vol6 += vertices_[t[0]].dot(vertices_[t[1]].cross(vertices_[t[2]]));
  return vol6 / 6.0;
}

Vec3 SurfaceMesh::vertex_centroid() const {
  Vec3 c = Vec3::Zero();
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

SurfaceMesh::SphereFit SurfaceMesh::sphere_fit() const {
  const Vec3 c = vertex_centroid();
  double mean = 0.0;
  for (const auto& v : vertices_) mean += (v - c).norm();
  mean /= static_cast<double>(vertices_.size());
  double dev = 0.0;
  for (const auto& v : vertices_) dev = std::max(dev, std::abs((v - c).norm() - mean) / mean);
  return {mean, dev};
}

SurfaceMesh make_icosphere(double radius, int level) {
  if (!(radius > 0.0)) throw std::invalid_argument("icosphere radius must be > 0");
  if (level < 0) throw std::invalid_argument("icosphere level must be >= 0");
  if (level > 6) throw std::invalid_argument("icosphere level above 6 is not supported");

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int s = 0; s < level; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    const auto mid = [&](int a, int b) {
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(f.size() * 4);
    for (const auto& t : f) {
      const int a = mid(t[0], t[1]), b = mid(t[1], t[2]), c = mid(t[2], t[0]);
      next.push_back({t[0], a, c});
      next.push_back({t[1], b, a});
      next.push_back({t[2], c, b});
      next.push_back({a, b, c});
    }
    f = std::move(next);
  }
  for (auto& p : v) p *= radius;
  return SurfaceMesh::build(std::move(v), std::move(f));
}

SurfaceMesh read_off(std::istream& in) {
  // Tokenise with '#' comments removed.
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  const auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw IoError("OFF: unexpected end of file");
    return tokens[pos++];
  };
  const auto next_num = [&](auto& out) {
    const std::string& s = next();
    std::istringstream is(s);
    if (!(is >> out)) throw IoError("OFF: malformed number '" + s + "'");
  };
  if (next() != "OFF") throw IoError("OFF: missing 'OFF' header");
  long nv = 0, nf = 0, ne = 0;
  next_num(nv);
  next_num(nf);
  next_num(ne);
  if (nv <= 0 || nf <= 0) throw IoError("OFF: bad vertex/face counts");
  std::vector<Vec3> verts(static_cast<std::size_t>(nv));
  for (auto& p : verts) {
    next_num(p.x());
    next_num(p.y());
    next_num(p.z());
  }
  std::vector<std::array<int, 3>> faces(static_cast<std::size_t>(nf));
  for (auto& t : faces) {
    int k = 0;
    next_num(k);
    if (k != 3) throw IoError("OFF: only triangular faces are supported");
    next_num(t[0]);
    next_num(t[1]);
    next_num(t[2]);
  }
  try {
    return SurfaceMesh::build(std::move(verts), std::move(faces));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("OFF: ") + e.what());
  }
}

SurfaceMesh read_off(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path.string());
  return read_off(in);
}

void write_off(std::ostream& out, const SurfaceMesh& mesh) {
  out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << ' ' << mesh.num_edges() << '\n';
  out << std::setprecision(17);
  for (const auto& p : mesh.vertices()) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

} // namespace tdem
