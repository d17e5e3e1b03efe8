#pragma once

// Triangulated sphere surfaces for the boundary integral solver: subdivided
// icosahedra with per-triangle centroid/normal/area quadrature data.

#include <array>
#include <vector>

#include "curlam/biquaternion.hpp"

namespace curlam::surf {

struct SurfaceMesh {
  std::vector<Pt> vertices;
  std::vector<std::array<int, 3>> triangles;  // wound so the face normal points outward
  std::vector<Pt> centroids;                  // flat-triangle centroids
  std::vector<Pt> normals;                    // outward unit normals
  std::vector<double> areas;

  std::size_t size() const { return triangles.size(); }
  double total_area() const;
  // Mean longest-edge length; the resolution scale for proximity checks.
  double mean_diameter() const;
};

// Icosahedron subdivided `level` times with vertices projected to the sphere
// of the given radius: 20 * 4^level triangles. level >= 1.
SurfaceMesh make_sphere_mesh(double radius, int level);

}  // namespace curlam::surf
