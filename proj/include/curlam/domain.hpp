#pragma once

// Voxelized quadrature model of bounded domains and fields sampled on
// grids or free point sets.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curlam/biquaternion.hpp"

namespace curlam::grid {

// Model shapes standing in for a smooth bounded domain. Ball and ellipsoid
// are centered at the origin; the box is given by its corners.
struct Shape {
  enum class Type { ball, box, ellipsoid };
  Type type = Type::ball;
  double radius = 1.0;          // ball
  Pt lo{-1, -1, -1}, hi{1, 1, 1};  // box
  Pt semi{1, 1, 1};             // ellipsoid semi-axes

  static Shape make_ball(double radius);
  static Shape make_box(Pt lo, Pt hi);
  static Shape make_ellipsoid(Pt semi_axes);

  bool inside(Pt p) const;
  // Lower bound on the distance from an interior point to the boundary
  // (exact for ball and box, conservative for the ellipsoid).
  double boundary_distance(Pt p) const;
  void bounding_box(Pt& blo, Pt& bhi) const;
  double volume() const;
};

// Uniform-grid midpoint quadrature of a shape: a cell contributes iff its
// center lies inside, with weight h^3.
struct VoxelDomain {
  Shape shape;
  int n = 0;                  // requested cells along the longest bbox edge
  double h = 0;               // cell edge, uniform across axes
  Pt lo;                      // bounding-box corner
  std::array<int, 3> dims{};  // lattice cells per axis
  std::vector<Pt> centers;    // interior cell centers, fixed deterministic order
  std::vector<double> weights;
  std::vector<int> cell_of_slot;  // dims-sized lattice -> index into centers, -1 outside

  std::size_t size() const { return centers.size(); }
  int slot(int i, int j, int k) const { return (k * dims[1] + j) * dims[0] + i; }
  // Index of the interior cell containing p (max-norm containment), or -1.
  int containing_cell(Pt p) const;
};

VoxelDomain build_domain(const Shape& shape, int n);

// Points arranged on a (partial) uniform lattice. `slots` maps a lattice
// slot to its row in `points` (-1 where absent); `ijk` is the inverse.
struct GridMeta {
  std::array<int, 3> dims{};
  double h = 0;
  Pt origin;  // coordinate of lattice node (0,0,0)
};

struct PointGrid {
  GridMeta meta;
  std::vector<Pt> points;
  std::vector<std::array<int, 3>> ijk;
  std::vector<int> slots;

  std::size_t size() const { return points.size(); }
  int slot(int i, int j, int k) const {
    return (k * meta.dims[1] + j) * meta.dims[0] + i;
  }
  int row(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i >= meta.dims[0] || j >= meta.dims[1] || k >= meta.dims[2])
      return -1;
    return slots[slot(i, j, k)];
  }
};

// Field sampled on points; values are biquaternions with a kind tag that
// records which components are meaningful.
enum class FieldKind { scalar, vector, full };

struct FieldSample {
  FieldKind kind = FieldKind::full;
  std::vector<Pt> points;
  std::vector<Biquaternion> values;
  std::optional<PointGrid> grid;  // set when points form a uniform lattice

  std::size_t size() const { return points.size(); }
  double norm2() const;  // plain l2 norm over all stored components
};

// Analytic field description: evaluator plus kind.
struct AnalyticField {
  FieldKind kind = FieldKind::full;
  std::function<Biquaternion(Pt)> f;
};

FieldSample sample(const AnalyticField& f, const std::vector<Pt>& points);
FieldSample sample(const AnalyticField& f, const PointGrid& g);

// Uniform evaluation lattice of points lying at distance >= (margin+1) *
// h_eval from the boundary, so FD stencils (and `margin` further erosions)
// stay inside the domain. margin >= 1.
PointGrid interior_eval_grid(const VoxelDomain& domain, int n_eval, int margin);

// Full lattice of dims nodes starting at origin with spacing h.
PointGrid make_grid(Pt origin, double h, std::array<int, 3> dims);

}  // namespace curlam::grid

namespace curlam {
using grid::AnalyticField;
using grid::FieldKind;
using grid::FieldSample;
using grid::PointGrid;
using grid::Shape;
using grid::VoxelDomain;
}  // namespace curlam
