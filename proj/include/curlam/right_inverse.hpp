#pragma once

// The right inverse R_lambda of curl + lambda built on the vector Teodorescu
// component, the general solution w = R_lambda[g] + u, and the gauge-
// transformed variant of the equation.

#include <functional>
#include <optional>

#include "curlam/domain.hpp"

namespace curlam::rightinv {

// A source field in two views: sampled at the quadrature cells (feeds the
// volume integrals) and evaluable at arbitrary points (feeds the pointwise
// terms of the solution formulas).
struct SourceField {
  FieldSample cells;
  std::function<Biquaternion(Pt)> at;
};

SourceField make_source(const VoxelDomain& dom, const AnalyticField& f);

// Source known only at the cell centers (e.g. loaded from CSV): evaluation
// between centers is trilinear over the cell lattice, renormalized over the
// available corners near the boundary, zero outside the lattice.
SourceField make_source_interpolated(const VoxelDomain& dom, FieldSample at_cells);

// R_lambda[g] = (1/lambda)(g - curl T2[g]) with the curl taken by FD on the
// evaluation lattice; the result lives on the once-eroded lattice.
FieldSample r_lambda(const VoxelDomain& dom, const SourceField& g, cplx lambda,
                     const PointGrid& eval);

// R_lambda[g] + u. A supplied homogeneous term u must pass the force-free
// verifier at wave number lambda within forcefree_tol.
FieldSample general_solution(const VoxelDomain& dom, const SourceField& g,
                             cplx lambda, const PointGrid& eval,
                             const std::optional<AnalyticField>& u,
                             double forcefree_tol);

// g0 = -div_fd(g)/lambda: the scalar completing g to the compatibility set
// "div g + lambda g0 = 0".
FieldSample compatibility_scalar(const FieldSample& g_on_grid, cplx lambda);

// Solves curl v + lambda v + grad(phi) x v = h by the substitution
// w = e^phi v, which satisfies the plain equation with source e^phi h.
FieldSample gauge_solve(const VoxelDomain& dom, const SourceField& h,
                        const std::function<cplx(Pt)>& phi, cplx lambda,
                        const PointGrid& eval);

}  // namespace curlam::rightinv
