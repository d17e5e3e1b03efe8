#include "curlam/right_inverse.hpp"

#include <cmath>
#include <sstream>

#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"
#include "curlam/force_free.hpp"
#include "curlam/potentials.hpp"

namespace curlam::rightinv {

SourceField make_source(const VoxelDomain& dom, const AnalyticField& f) {
  SourceField s;
  s.cells = grid::sample(f, dom.centers);
  s.at = f.f;
  return s;
}

SourceField make_source_interpolated(const VoxelDomain& dom, FieldSample at_cells) {
  if (at_cells.size() != dom.size())
    throw PreconditionError("interpolated source is not sampled at the domain cells");
  SourceField s;
  s.at = [dom, values = at_cells.values](Pt p) {
    // Cell-center lattice coordinates of p, base corner (i0,j0,k0).
    const double u = (p.x - dom.lo.x) / dom.h - 0.5;
    const double v = (p.y - dom.lo.y) / dom.h - 0.5;
    const double w = (p.z - dom.lo.z) / dom.h - 0.5;
    const int i0 = static_cast<int>(std::floor(u));
    const int j0 = static_cast<int>(std::floor(v));
    const int k0 = static_cast<int>(std::floor(w));
    const double fu = u - i0, fv = v - j0, fw = w - k0;
    Biquaternion acc{};
    double total = 0;
    for (int dk = 0; dk < 2; ++dk)
      for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) {
          const int i = i0 + di, j = j0 + dj, k = k0 + dk;
          if (i < 0 || j < 0 || k < 0 || i >= dom.dims[0] ||
              j >= dom.dims[1] || k >= dom.dims[2])
            continue;
          const int cell = dom.cell_of_slot[dom.slot(i, j, k)];
          if (cell < 0) continue;
          const double wgt = (di ? fu : 1 - fu) * (dj ? fv : 1 - fv) *
                             (dk ? fw : 1 - fw);
          acc += wgt * values[cell];
          total += wgt;
        }
    // Renormalizing over available corners keeps boundary cells from being
    // dragged toward zero by missing neighbors.
    if (total <= 0) return Biquaternion{};
    return (1.0 / total) * acc;
  };
  s.cells = std::move(at_cells);
  return s;
}

namespace {

void require_nonzero_lambda(cplx lambda, const char* what) {
  if (lambda == cplx{}) {
    std::ostringstream msg;
    msg << what << " requires lambda != 0 (the lambda = 0 problem is a "
                   "different construction, out of scope)";
    throw PreconditionError(msg.str());
  }
}

}  // namespace

FieldSample r_lambda(const VoxelDomain& dom, const SourceField& g, cplx lambda,
                     const PointGrid& eval) {
  require_nonzero_lambda(lambda, "r_lambda");
  const FieldSample t2v = potentials::t2(dom, g.cells, lambda, +1, eval);
  FieldSample w = fd::curl(t2v);
  if (w.size() == 0)
    throw PreconditionError(
        "evaluation lattice too small: nothing survives the curl's "
        "finite-difference erosion");
  const cplx inv = 1.0 / lambda;
  for (std::size_t r = 0; r < w.size(); ++r) {
    const Biquaternion gv = g.at(w.points[r]);
    w.values[r] = inv * (quat::embed(cplx{}, quat::vec(gv)) - w.values[r]);
  }
  w.kind = FieldKind::vector;
  return w;
}

FieldSample general_solution(const VoxelDomain& dom, const SourceField& g,
                             cplx lambda, const PointGrid& eval,
                             const std::optional<AnalyticField>& u,
                             double forcefree_tol) {
  FieldSample w = r_lambda(dom, g, lambda, eval);
  if (!u) return w;

  const FieldSample us = grid::sample(*u, eval);
  const forcefree::ForceFreeReport rep = forcefree::verify_forcefree(us, lambda);
  if (!rep.pass(forcefree_tol)) {
    std::ostringstream msg;
    msg << "homogeneous term is not force-free at this wave number: "
        << "curl residual " << rep.curl_residual << ", div residual "
        << rep.div_residual << " (tolerance " << forcefree_tol << ")";
    throw PreconditionError(msg.str());
  }
  for (std::size_t r = 0; r < w.size(); ++r)
    w.values[r] += quat::embed(cplx{}, quat::vec(u->f(w.points[r])));
  return w;
}

FieldSample compatibility_scalar(const FieldSample& g_on_grid, cplx lambda) {
  require_nonzero_lambda(lambda, "compatibility_scalar");
  FieldSample g0 = fd::divergence(g_on_grid);
  const cplx scale = -1.0 / lambda;
  for (auto& v : g0.values) v.w0 *= scale;
  return g0;
}

FieldSample gauge_solve(const VoxelDomain& dom, const SourceField& h,
                        const std::function<cplx(Pt)>& phi, cplx lambda,
                        const PointGrid& eval) {
  require_nonzero_lambda(lambda, "gauge_solve");
  SourceField scaled;
  scaled.cells = h.cells;
  for (std::size_t j = 0; j < dom.size(); ++j)
    scaled.cells.values[j] = std::exp(phi(dom.centers[j])) * scaled.cells.values[j];
  scaled.at = [&h, &phi](Pt p) { return std::exp(phi(p)) * h.at(p); };

  FieldSample v = r_lambda(dom, scaled, lambda, eval);
  for (std::size_t r = 0; r < v.size(); ++r)
    v.values[r] = std::exp(-phi(v.points[r])) * v.values[r];
  return v;
}

}  // namespace curlam::rightinv
