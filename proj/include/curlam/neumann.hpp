#pragma once

// Nystrom solution of the Neumann boundary value problem for the main
// operator: centroid-collocation boundary integral equation, surface
// potentials off the surface, and the reconstruction w = R[g] + u.

#include <vector>

#include "curlam/domain.hpp"
#include "curlam/right_inverse.hpp"
#include "curlam/surface_mesh.hpp"

namespace curlam::neumann {

// Densities attached to the collocation points (triangle centroids).
struct BoundaryData {
  std::vector<cplx> phi0;  // normal trace datum
  std::vector<cplx> psi0;  // scalar density
  std::vector<Vec3c> psi;  // vector density, tangential after projection
};

// Single layer: sum_t theta(x - c_t) d_t A_t. Eval points must keep a
// distance of at least twice the mean triangle diameter from the surface
// (centroid quadrature blows up closer in); violations raise
// SingularPointError.
FieldSample surface_potential_scalar(const std::vector<cplx>& psi0,
                                     const surf::SurfaceMesh& mesh, cplx lambda,
                                     const std::vector<Pt>& eval);
FieldSample surface_potential_vector(const std::vector<Vec3c>& psi,
                                     const surf::SurfaceMesh& mesh, cplx lambda,
                                     const std::vector<Pt>& eval);

// Homogeneous interior solution from the solved densities, all derivatives
// taken analytically on the kernel:
//   u(x) = -grad S[psi0](x) - (curl - lambda) S[psi](x).
FieldSample reconstruct_interior(const BoundaryData& data,
                                 const surf::SurfaceMesh& mesh, cplx lambda,
                                 const std::vector<Pt>& eval);
FieldSample reconstruct_interior(const BoundaryData& data,
                                 const surf::SurfaceMesh& mesh, cplx lambda,
                                 const PointGrid& eval);

// Dense collocation matrix of the boundary integral equation
//   (1/2) psi(x) + int n(x) x (lambda theta psi - grad theta x psi) ds = rhs,
// row-major over 3N unknowns (triangle-major, component-minor). The
// self-triangle integral is dropped; the diagonal block 1/2 I makes the
// normal components satisfy psi.n = 0, which the continuous equation
// guarantees for tangential data.
struct BieSystem {
  std::size_t n = 0;       // triangles
  std::vector<cplx> mat;   // (3n) x (3n), row-major
  std::vector<cplx> apply(const std::vector<cplx>& x) const;
};

BieSystem assemble_bie(const surf::SurfaceMesh& mesh, cplx lambda);

// The same operator applied by direct summation (no stored matrix); used
// both as an assembly cross-check and for meshes too large to factor.
std::vector<cplx> bie_apply_direct(const surf::SurfaceMesh& mesh, cplx lambda,
                                   const std::vector<cplx>& psi);

// Right-hand side n(x) x int grad theta psi0 ds, self-triangle dropped.
std::vector<cplx> bie_rhs(const surf::SurfaceMesh& mesh, cplx lambda,
                          const std::vector<cplx>& psi0);

// psi0 = phi0 - R[g].n at the centroids. The normal component of curl T2[g]
// on the surface is taken as the surface divergence of T2[g] x n with T2
// evaluated at the mesh vertices, which avoids differentiating the volume
// kernel across the boundary.
std::vector<cplx> boundary_psi0(const VoxelDomain& dom,
                                const rightinv::SourceField& g,
                                const std::vector<cplx>& phi0, cplx lambda,
                                const surf::SurfaceMesh& mesh);

struct NeumannDiagnostics {
  double compat = 0;             // relative defect of the solvability condition
  double bie_residual = 0;       // ||A psi - b|| / ||psi|| after projection
  double tangential_defect = 0;  // max |psi.n| before projection
  double condition = 0;          // 1-norm condition estimate of the matrix
  double bc_residual = 0;        // ||w.n - phi0|| / ||phi0|| near the surface
};

struct NeumannSolution {
  FieldSample w;      // R[g] + u on the once-eroded evaluation lattice
  BoundaryData data;  // densities at the centroids
  NeumannDiagnostics diag;
};

// Full pipeline. phi0 is given at the mesh centroids; the solvability
// condition int (g.n - lambda phi0) ds = 0 is checked first within
// compat_tol (relative) and CompatibilityError is raised on failure.
NeumannSolution solve_neumann(const VoxelDomain& dom,
                              const rightinv::SourceField& g,
                              const std::vector<cplx>& phi0, cplx lambda,
                              const surf::SurfaceMesh& mesh,
                              const PointGrid& eval, double compat_tol);

}  // namespace curlam::neumann
