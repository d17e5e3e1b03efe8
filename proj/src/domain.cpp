#include "curlam/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curlam/errors.hpp"

namespace curlam::grid {

Shape Shape::make_ball(double radius) {
  if (!(radius > 0)) throw ConfigError("ball radius must be positive");
  Shape s;
  s.type = Type::ball;
  s.radius = radius;
  return s;
}

Shape Shape::make_box(Pt lo, Pt hi) {
  if (!(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z))
    throw ConfigError("box corners must satisfy lo < hi componentwise");
  Shape s;
  s.type = Type::box;
  s.lo = lo;
  s.hi = hi;
  return s;
}

Shape Shape::make_ellipsoid(Pt semi_axes) {
  if (!(semi_axes.x > 0 && semi_axes.y > 0 && semi_axes.z > 0))
    throw ConfigError("ellipsoid semi-axes must be positive");
  Shape s;
  s.type = Type::ellipsoid;
  s.semi = semi_axes;
  return s;
}

bool Shape::inside(Pt p) const {
  switch (type) {
    case Type::ball:
      return norm(p) < radius;
    case Type::box:
      return lo.x < p.x && p.x < hi.x && lo.y < p.y && p.y < hi.y &&
             lo.z < p.z && p.z < hi.z;
    case Type::ellipsoid: {
      const double rx = p.x / semi.x, ry = p.y / semi.y, rz = p.z / semi.z;
      return rx * rx + ry * ry + rz * rz < 1.0;
    }
  }
  return false;
}

double Shape::boundary_distance(Pt p) const {
  switch (type) {
    case Type::ball:
      return radius - norm(p);
    case Type::box: {
      double d = p.x - lo.x;
      d = std::min(d, hi.x - p.x);
      d = std::min(d, p.y - lo.y);
      d = std::min(d, hi.y - p.y);
      d = std::min(d, p.z - lo.z);
      d = std::min(d, hi.z - p.z);
      return d;
    }
    case Type::ellipsoid: {
      // (1 - r) * min semi-axis underestimates the true distance, which is
      // all the eval-grid erosion needs.
      const double rx = p.x / semi.x, ry = p.y / semi.y, rz = p.z / semi.z;
      const double r = std::sqrt(rx * rx + ry * ry + rz * rz);
      return (1.0 - r) * std::min({semi.x, semi.y, semi.z});
    }
  }
  return 0;
}

void Shape::bounding_box(Pt& blo, Pt& bhi) const {
  switch (type) {
    case Type::ball:
      blo = Pt{-radius, -radius, -radius};
      bhi = Pt{radius, radius, radius};
      return;
    case Type::box:
      blo = lo;
      bhi = hi;
      return;
    case Type::ellipsoid:
      blo = Pt{-semi.x, -semi.y, -semi.z};
      bhi = Pt{semi.x, semi.y, semi.z};
      return;
  }
}

double Shape::volume() const {
  constexpr double four_thirds_pi = 4.0 / 3.0 * std::numbers::pi;
  switch (type) {
    case Type::ball:
      return four_thirds_pi * radius * radius * radius;
    case Type::box:
      return (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);
    case Type::ellipsoid:
      return four_thirds_pi * semi.x * semi.y * semi.z;
  }
  return 0;
}

namespace {

// Cells per axis once h is fixed by the longest bounding-box edge. The
// epsilon keeps exact divisions (e.g. the cube itself) from rounding up.
std::array<int, 3> axis_counts(Pt lo, Pt hi, double h) {
  auto count = [h](double edge) {
    return static_cast<int>(std::ceil(edge / h - 1e-12));
  };
  return {count(hi.x - lo.x), count(hi.y - lo.y), count(hi.z - lo.z)};
}

}  // namespace

VoxelDomain build_domain(const Shape& shape, int n) {
  if (n < 4) throw ConfigError("domain resolution n must be at least 4");

  VoxelDomain d;
  d.shape = shape;
  d.n = n;

  Pt blo, bhi;
  shape.bounding_box(blo, bhi);
  const double max_edge =
      std::max({bhi.x - blo.x, bhi.y - blo.y, bhi.z - blo.z});
  d.h = max_edge / n;
  d.lo = blo;
  d.dims = axis_counts(blo, bhi, d.h);

  const double w = d.h * d.h * d.h;
  d.cell_of_slot.assign(
      static_cast<std::size_t>(d.dims[0]) * d.dims[1] * d.dims[2], -1);
  for (int k = 0; k < d.dims[2]; ++k)
    for (int j = 0; j < d.dims[1]; ++j)
      for (int i = 0; i < d.dims[0]; ++i) {
        const Pt c{blo.x + (i + 0.5) * d.h, blo.y + (j + 0.5) * d.h,
                   blo.z + (k + 0.5) * d.h};
        if (!shape.inside(c)) continue;
        d.cell_of_slot[d.slot(i, j, k)] = static_cast<int>(d.centers.size());
        d.centers.push_back(c);
        d.weights.push_back(w);
      }
  if (d.centers.empty()) throw PreconditionError("domain grid has no interior cells");
  return d;
}

int VoxelDomain::containing_cell(Pt p) const {
  const int i = static_cast<int>(std::floor((p.x - lo.x) / h));
  const int j = static_cast<int>(std::floor((p.y - lo.y) / h));
  const int k = static_cast<int>(std::floor((p.z - lo.z) / h));
  if (i < 0 || j < 0 || k < 0 || i >= dims[0] || j >= dims[1] || k >= dims[2])
    return -1;
  return cell_of_slot[slot(i, j, k)];
}

double FieldSample::norm2() const {
  double s = 0;
  for (const auto& v : values)
    s += std::norm(v.w0) + std::norm(v.w1) + std::norm(v.w2) + std::norm(v.w3);
  return std::sqrt(s);
}

FieldSample sample(const AnalyticField& f, const std::vector<Pt>& points) {
  FieldSample out;
  out.kind = f.kind;
  out.points = points;
  out.values.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.values[i] = f.f(points[i]);
  return out;
}

FieldSample sample(const AnalyticField& f, const PointGrid& g) {
  FieldSample out = sample(f, g.points);
  out.grid = g;
  return out;
}

PointGrid make_grid(Pt origin, double h, std::array<int, 3> dims) {
  PointGrid g;
  g.meta.h = h;
  g.meta.dims = dims;
  g.meta.origin = origin;
  g.slots.assign(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2], -1);
  for (int k = 0; k < dims[2]; ++k)
    for (int j = 0; j < dims[1]; ++j)
      for (int i = 0; i < dims[0]; ++i) {
        g.slots[g.slot(i, j, k)] = static_cast<int>(g.points.size());
        g.points.push_back(
            Pt{origin.x + i * h, origin.y + j * h, origin.z + k * h});
        g.ijk.push_back({i, j, k});
      }
  return g;
}

PointGrid interior_eval_grid(const VoxelDomain& domain, int n_eval, int margin) {
  if (n_eval < 1) throw ConfigError("eval resolution must be at least 1");
  if (margin < 1) throw ConfigError("eval margin must be at least 1");

  Pt blo, bhi;
  domain.shape.bounding_box(blo, bhi);
  const double max_edge =
      std::max({bhi.x - blo.x, bhi.y - blo.y, bhi.z - blo.z});
  const double h = max_edge / n_eval;

  PointGrid g;
  g.meta.h = h;
  g.meta.dims = axis_counts(blo, bhi, h);
  g.meta.origin = Pt{blo.x + 0.5 * h, blo.y + 0.5 * h, blo.z + 0.5 * h};
  g.slots.assign(
      static_cast<std::size_t>(g.meta.dims[0]) * g.meta.dims[1] * g.meta.dims[2],
      -1);

  // Keep a node only when the whole FD halo around it (margin extra layers)
  // is guaranteed to stay inside the domain.
  const double clearance = (margin + 1) * h;
  for (int k = 0; k < g.meta.dims[2]; ++k)
    for (int j = 0; j < g.meta.dims[1]; ++j)
      for (int i = 0; i < g.meta.dims[0]; ++i) {
        const Pt p{g.meta.origin.x + i * h, g.meta.origin.y + j * h,
                   g.meta.origin.z + k * h};
        if (domain.shape.boundary_distance(p) < clearance) continue;
        g.slots[g.slot(i, j, k)] = static_cast<int>(g.points.size());
        g.points.push_back(p);
        g.ijk.push_back({i, j, k});
      }
  if (g.points.empty())
    throw PreconditionError(
        "evaluation grid is empty: resolution too coarse for the requested margin");
  return g;
}

}  // namespace curlam::grid
