#include "curlam/fd_ops.hpp"

#include <cmath>
#include <cstdlib>

#include "curlam/errors.hpp"

namespace curlam::fd {

using grid::PointGrid;

namespace {

const PointGrid& need_grid(const FieldSample& w) {
  if (!w.grid) throw PreconditionError("field sample is not on a lattice");
  return *w.grid;
}

struct Stencil {
  const FieldSample& in;
  const PointGrid& g;
  int step;
  double denom;  // 2 * step * h, the central-difference divisor

  // Rows of the two axis neighbors of (i,j,k); guaranteed present after erode.
  const Biquaternion& minus(int axis, int i, int j, int k) const {
    return in.values[g.row(i - step * (axis == 0), j - step * (axis == 1),
                           k - step * (axis == 2))];
  }
  const Biquaternion& plus(int axis, int i, int j, int k) const {
    return in.values[g.row(i + step * (axis == 0), j + step * (axis == 1),
                           k + step * (axis == 2))];
  }
};

FieldSample make_output(FieldKind kind, PointGrid&& eroded) {
  FieldSample out;
  out.kind = kind;
  out.points = eroded.points;
  out.values.resize(eroded.points.size());
  out.grid = std::move(eroded);
  return out;
}

}  // namespace

PointGrid erode(const PointGrid& g, int step) {
  PointGrid out;
  out.meta = g.meta;
  out.slots.assign(g.slots.size(), -1);
  for (std::size_t r = 0; r < g.points.size(); ++r) {
    const auto [i, j, k] = g.ijk[r];
    if (g.row(i - step, j, k) < 0 || g.row(i + step, j, k) < 0 ||
        g.row(i, j - step, k) < 0 || g.row(i, j + step, k) < 0 ||
        g.row(i, j, k - step) < 0 || g.row(i, j, k + step) < 0)
      continue;
    out.slots[out.slot(i, j, k)] = static_cast<int>(out.points.size());
    out.points.push_back(g.points[r]);
    out.ijk.push_back({i, j, k});
  }
  return out;
}

FieldSample gradient(const FieldSample& w) {
  const PointGrid& g = need_grid(w);
  FieldSample out = make_output(FieldKind::vector, erode(g, 1));
  const Stencil st{w, g, 1, 2.0 * g.meta.h};
  for (std::size_t r = 0; r < out.points.size(); ++r) {
    const auto [i, j, k] = out.grid->ijk[r];
    out.values[r] = quat::embed(
        cplx{},
        Vec3c{(st.plus(0, i, j, k).w0 - st.minus(0, i, j, k).w0) / st.denom,
              (st.plus(1, i, j, k).w0 - st.minus(1, i, j, k).w0) / st.denom,
              (st.plus(2, i, j, k).w0 - st.minus(2, i, j, k).w0) / st.denom});
  }
  return out;
}

FieldSample divergence(const FieldSample& w) {
  const PointGrid& g = need_grid(w);
  FieldSample out = make_output(FieldKind::scalar, erode(g, 1));
  const Stencil st{w, g, 1, 2.0 * g.meta.h};
  for (std::size_t r = 0; r < out.points.size(); ++r) {
    const auto [i, j, k] = out.grid->ijk[r];
    const cplx d = (st.plus(0, i, j, k).w1 - st.minus(0, i, j, k).w1 +
                    st.plus(1, i, j, k).w2 - st.minus(1, i, j, k).w2 +
                    st.plus(2, i, j, k).w3 - st.minus(2, i, j, k).w3) /
                   st.denom;
    out.values[r] = quat::embed(d, Vec3c{});
  }
  return out;
}

FieldSample curl(const FieldSample& w) {
  const PointGrid& g = need_grid(w);
  FieldSample out = make_output(FieldKind::vector, erode(g, 1));
  const Stencil st{w, g, 1, 2.0 * g.meta.h};
  for (std::size_t r = 0; r < out.points.size(); ++r) {
    const auto [i, j, k] = out.grid->ijk[r];
    const cplx dy_w3 = (st.plus(1, i, j, k).w3 - st.minus(1, i, j, k).w3) / st.denom;
    const cplx dz_w2 = (st.plus(2, i, j, k).w2 - st.minus(2, i, j, k).w2) / st.denom;
    const cplx dz_w1 = (st.plus(2, i, j, k).w1 - st.minus(2, i, j, k).w1) / st.denom;
    const cplx dx_w3 = (st.plus(0, i, j, k).w3 - st.minus(0, i, j, k).w3) / st.denom;
    const cplx dx_w2 = (st.plus(0, i, j, k).w2 - st.minus(0, i, j, k).w2) / st.denom;
    const cplx dy_w1 = (st.plus(1, i, j, k).w1 - st.minus(1, i, j, k).w1) / st.denom;
    out.values[r] = quat::embed(
        cplx{}, Vec3c{dy_w3 - dz_w2, dz_w1 - dx_w3, dx_w2 - dy_w1});
  }
  return out;
}

FieldSample laplacian(const FieldSample& w, LaplacianStencil stencil) {
  const PointGrid& g = need_grid(w);
  const int step = stencil == LaplacianStencil::Compact ? 1 : 2;
  FieldSample out = make_output(w.kind, erode(g, step));
  // delta_i^2 with the step-h central difference applied twice has divisor
  // (2h)^2; the compact stencil has the usual h^2.
  const double h = g.meta.h;
  const double inv_h2 =
      stencil == LaplacianStencil::Compact ? 1.0 / (h * h) : 1.0 / (4.0 * h * h);
  const Stencil st{w, g, step, 0};
  for (std::size_t r = 0; r < out.points.size(); ++r) {
    const auto [i, j, k] = out.grid->ijk[r];
    const Biquaternion& c = w.values[g.row(i, j, k)];
    Biquaternion acc = -6.0 * c;
    for (int axis = 0; axis < 3; ++axis)
      acc += st.minus(axis, i, j, k) + st.plus(axis, i, j, k);
    out.values[r] = inv_h2 * acc;
  }
  return out;
}

FieldSample dirac(const FieldSample& w) {
  const PointGrid& g = need_grid(w);
  FieldSample out = make_output(FieldKind::full, erode(g, 1));
  const Stencil st{w, g, 1, 2.0 * g.meta.h};
  for (std::size_t r = 0; r < out.points.size(); ++r) {
    const auto [i, j, k] = out.grid->ijk[r];
    Biquaternion dx = (st.plus(0, i, j, k) - st.minus(0, i, j, k));
    Biquaternion dy = (st.plus(1, i, j, k) - st.minus(1, i, j, k));
    Biquaternion dz = (st.plus(2, i, j, k) - st.minus(2, i, j, k));
    dx = (1.0 / st.denom) * dx;
    dy = (1.0 / st.denom) * dy;
    dz = (1.0 / st.denom) * dz;
    const cplx div = dx.w1 + dy.w2 + dz.w3;
    const Vec3c grad0{dx.w0, dy.w0, dz.w0};
    const Vec3c curlv{dy.w3 - dz.w2, dz.w1 - dx.w3, dx.w2 - dy.w1};
    out.values[r] = quat::embed(-div, grad0 + curlv);
  }
  return out;
}

namespace {

bool same_meta(const grid::GridMeta& a, const grid::GridMeta& b) {
  const double tol = 1e-12 * (std::abs(a.h) + std::abs(b.h));
  return a.dims == b.dims && std::abs(a.h - b.h) <= tol &&
         std::abs(a.origin.x - b.origin.x) <= tol &&
         std::abs(a.origin.y - b.origin.y) <= tol &&
         std::abs(a.origin.z - b.origin.z) <= tol;
}

template <typename Fn>
void visit_common(const FieldSample& a, const FieldSample& b, Fn&& fn) {
  std::size_t hits = 0;
  if (a.grid && b.grid && same_meta(a.grid->meta, b.grid->meta)) {
    const bool a_smaller = a.size() <= b.size();
    const FieldSample& s = a_smaller ? a : b;
    const FieldSample& o = a_smaller ? b : a;
    for (std::size_t r = 0; r < s.size(); ++r) {
      const auto [i, j, k] = s.grid->ijk[r];
      const int q = o.grid->row(i, j, k);
      if (q < 0) continue;
      ++hits;
      if (a_smaller)
        fn(static_cast<int>(r), q);
      else
        fn(q, static_cast<int>(r));
    }
  } else {
    if (a.size() != b.size())
      throw PreconditionError("field samples cover different point sets");
    for (std::size_t r = 0; r < a.size(); ++r) {
      const Pt d = a.points[r] - b.points[r];
      if (norm(d) > 1e-12)
        throw PreconditionError("field samples cover different point sets");
      ++hits;
      fn(static_cast<int>(r), static_cast<int>(r));
    }
  }
  if (hits == 0) throw PreconditionError("field samples share no points");
}

double abs2(const Biquaternion& v) {
  return std::norm(v.w0) + std::norm(v.w1) + std::norm(v.w2) + std::norm(v.w3);
}

}  // namespace

double rel_l2_error(const FieldSample& a, const FieldSample& b) {
  double num = 0, den = 0;
  visit_common(a, b, [&](int ia, int ib) {
    num += abs2(a.values[ia] - b.values[ib]);
    den += abs2(b.values[ib]);
  });
  if (den == 0) return std::sqrt(num);
  return std::sqrt(num / den);
}

double linf_error(const FieldSample& a, const FieldSample& b) {
  double m = 0;
  visit_common(a, b, [&](int ia, int ib) {
    const Biquaternion d = a.values[ia] - b.values[ib];
    m = std::max({m, std::abs(d.w0), std::abs(d.w1), std::abs(d.w2),
                  std::abs(d.w3)});
  });
  return m;
}

double linf_norm(const FieldSample& a) {
  double m = 0;
  for (const auto& v : a.values)
    m = std::max({m, std::abs(v.w0), std::abs(v.w1), std::abs(v.w2),
                  std::abs(v.w3)});
  return m;
}

}  // namespace curlam::fd
