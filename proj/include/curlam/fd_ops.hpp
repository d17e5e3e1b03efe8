#pragma once

// Central-difference differential operators on lattice field samples. Every
// operator erodes the point set: the result lives on the nodes whose stencil
// neighbors were all present in the input.

#include "curlam/domain.hpp"

namespace curlam::fd {

// Nodes of g whose six axis neighbors at lattice distance `step` are present.
grid::PointGrid erode(const grid::PointGrid& g, int step);

FieldSample gradient(const FieldSample& w);    // w0 -> vector
FieldSample divergence(const FieldSample& w);  // vector part -> scalar
FieldSample curl(const FieldSample& w);        // vector part -> vector

// Compact is the usual 7-point h-stencil. Composed chains two central first
// differences per axis (a 2h-wide stencil); it is the square that the dirac
// operator below satisfies identically: dirac(dirac w) = -laplacian_composed w.
enum class LaplacianStencil { Compact, Composed };
FieldSample laplacian(const FieldSample& w,
                      LaplacianStencil stencil = LaplacianStencil::Compact);

// dirac w = -div(vec w) + grad(sc w) + curl(vec w), one erosion pass.
FieldSample dirac(const FieldSample& w);

// Relative l2 distance ||a - b|| / ||b|| over the points common to both
// samples (aligned via their lattices when present, by position otherwise).
double rel_l2_error(const FieldSample& a, const FieldSample& b);
// Max componentwise modulus of a - b over the common points.
double linf_error(const FieldSample& a, const FieldSample& b);
// Max componentwise modulus of the sample itself.
double linf_norm(const FieldSample& a);

}  // namespace curlam::fd
