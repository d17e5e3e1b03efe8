#include "curlam/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "curlam/errors.hpp"

namespace curlam::surf {

double SurfaceMesh::total_area() const {
  double a = 0;
  for (double t : areas) a += t;
  return a;
}

double SurfaceMesh::mean_diameter() const {
  if (triangles.empty()) return 0;
  double sum = 0;
  for (const auto& t : triangles) {
    Pt a = vertices[t[0]], b = vertices[t[1]], c = vertices[t[2]];
    sum += std::max({norm(b - a), norm(c - b), norm(a - c)});
  }
  return sum / static_cast<double>(triangles.size());
}

namespace {

Pt scaled_to_sphere(Pt p, double radius) {
  double r = norm(p);
  return (radius / r) * p;
}

// Midpoint vertex shared between triangles, created once per edge.
int midpoint(int a, int b, std::vector<Pt>& verts, double radius,
             std::map<std::pair<int, int>, int>& cache) {
  std::pair<int, int> key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Pt m = scaled_to_sphere(0.5 * (verts[a] + verts[b]), radius);
  int idx = static_cast<int>(verts.size());
  verts.push_back(m);
  cache.emplace(key, idx);
  return idx;
}

}  // namespace

SurfaceMesh make_sphere_mesh(double radius, int level) {
  if (radius <= 0) throw ConfigError("sphere mesh radius must be positive");
  if (level < 1) throw ConfigError("sphere mesh level must be >= 1");

  // Unit icosahedron: vertices are the cyclic permutations of (0, ±1, ±g).
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Pt> verts = {
      {-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0},
      {0, -1, g}, {0, 1, g}, {0, -1, -g}, {0, 1, -g},
      {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  for (Pt& v : verts) v = scaled_to_sphere(v, radius);
  std::vector<std::array<int, 3>> tris = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      int ab = midpoint(t[0], t[1], verts, radius, cache);
      int bc = midpoint(t[1], t[2], verts, radius, cache);
      int ca = midpoint(t[2], t[0], verts, radius, cache);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }

  SurfaceMesh mesh;
  mesh.vertices = std::move(verts);
  mesh.triangles = std::move(tris);
  mesh.centroids.resize(mesh.triangles.size());
  mesh.normals.resize(mesh.triangles.size());
  mesh.areas.resize(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    std::array<int, 3>& tri = mesh.triangles[t];
    Pt a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
    Pt cr = cross(b - a, c - a);
    double two_a = norm(cr);
    if (!(two_a > 0)) throw PreconditionError("degenerate triangle in sphere mesh");
    Pt ctr = (1.0 / 3.0) * (a + b + c);
    Pt n = (1.0 / two_a) * cr;
    // The sphere is centered at the origin: outward means along the centroid.
    if (dot(n, ctr) < 0) {
      std::swap(tri[1], tri[2]);
      n = -1.0 * n;
    }
    mesh.centroids[t] = ctr;
    mesh.normals[t] = n;
    mesh.areas[t] = 0.5 * two_a;
  }
  return mesh;
}

}  // namespace curlam::surf
