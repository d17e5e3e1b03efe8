#pragma once

// Volume integral operators over a voxelized domain: the Newton potential
// for Helmholtz and the Teodorescu transform for D + lambda, together with
// its scalar/gradient/vector component operators.
//
// All operators share one quadrature core, so the decomposition
// T = t0 + t1 + t2 holds bitwise, not just analytically.

#include <vector>

#include "curlam/domain.hpp"

namespace curlam::potentials {

// Componentwise theta-convolution: L[w](x) = sum_j theta(x-y_j) w(y_j) h^3,
// the singular cell replaced by the analytic equal-volume ball integral.
FieldSample newton_L(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
                     const std::vector<Pt>& eval);
FieldSample newton_L(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
                     const PointGrid& eval);

// T_{sign*lambda}[w](x) = sum_j E(x-y_j) w(y_j) h^3 with the same singular
// cell rule (theta part corrected analytically, grad-theta part dropped).
FieldSample teodorescu_T(const VoxelDomain& dom, const FieldSample& w,
                         cplx lambda, const std::vector<Pt>& eval, int sign = +1);
FieldSample teodorescu_T(const VoxelDomain& dom, const FieldSample& w,
                         cplx lambda, const PointGrid& eval, int sign = +1);

// Scalar component: integral of (sign lambda) theta w0 + grad theta . vec w.
FieldSample t0(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const std::vector<Pt>& eval);
FieldSample t0(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const PointGrid& eval);

// Gradient component: -integral of grad theta w0. Independent of the sign
// branch by construction (no lambda term in the integrand).
FieldSample t1(const VoxelDomain& dom, const FieldSample& w0, cplx lambda,
               const std::vector<Pt>& eval);
FieldSample t1(const VoxelDomain& dom, const FieldSample& w0, cplx lambda,
               const PointGrid& eval);

// Vector component: integral of (sign lambda) theta vec w - grad theta x vec w.
FieldSample t2(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const std::vector<Pt>& eval);
FieldSample t2(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const PointGrid& eval);

}  // namespace curlam::potentials
