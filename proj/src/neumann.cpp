#include "curlam/neumann.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "curlam/errors.hpp"
#include "curlam/kernels.hpp"
#include "curlam/parallel.hpp"
#include "curlam/potentials.hpp"

namespace curlam::neumann {

namespace {

constexpr double kTiny = 1e-300;

void check_proximity(const surf::SurfaceMesh& mesh, const std::vector<Pt>& pts) {
  // Centroid distance approximates surface distance to within one triangle
  // diameter, which the factor-of-two floor already absorbs.
  const double floor_d = 2.0 * mesh.mean_diameter() * (1.0 - 1e-9);
  for (Pt p : pts) {
    double dmin = std::numeric_limits<double>::infinity();
    for (Pt c : mesh.centroids) {
      dmin = std::min(dmin, norm(p - c));
      if (dmin < floor_d) break;
    }
    if (dmin < floor_d) {
      std::ostringstream msg;
      msg << "evaluation point (" << p.x << ", " << p.y << ", " << p.z
          << ") lies closer to the surface than twice the mean triangle "
             "diameter ("
          << dmin << " < " << floor_d << ")";
      throw SingularPointError(msg.str());
    }
  }
}

FieldSample make_sample(FieldKind kind, const std::vector<Pt>& pts) {
  FieldSample s;
  s.kind = kind;
  s.points = pts;
  s.values.resize(pts.size());
  return s;
}

// Hat-function surface gradients of a triangle, indexed like its vertices.
void hat_gradients(const surf::SurfaceMesh& mesh, std::size_t t, Pt grad[3]) {
  const std::array<int, 3>& tri = mesh.triangles[t];
  Pt v0 = mesh.vertices[tri[0]], v1 = mesh.vertices[tri[1]], v2 = mesh.vertices[tri[2]];
  Pt n = mesh.normals[t];
  double inv2a = 1.0 / (2.0 * mesh.areas[t]);
  grad[0] = inv2a * cross(n, v2 - v1);
  grad[1] = inv2a * cross(n, v0 - v2);
  grad[2] = inv2a * cross(n, v1 - v0);
}

}  // namespace

FieldSample surface_potential_scalar(const std::vector<cplx>& psi0,
                                     const surf::SurfaceMesh& mesh, cplx lambda,
                                     const std::vector<Pt>& eval) {
  if (psi0.size() != mesh.size())
    throw PreconditionError("density size does not match the mesh");
  check_proximity(mesh, eval);
  FieldSample out = make_sample(FieldKind::scalar, eval);
  parallel_for(eval.size(), [&](std::size_t p) {
    cplx acc(0, 0);
    for (std::size_t t = 0; t < mesh.size(); ++t)
      acc += kernels::theta(eval[p] - mesh.centroids[t], lambda) * psi0[t] *
             mesh.areas[t];
    out.values[p] = embed(acc, Vec3c{});
  });
  return out;
}

FieldSample surface_potential_vector(const std::vector<Vec3c>& psi,
                                     const surf::SurfaceMesh& mesh, cplx lambda,
                                     const std::vector<Pt>& eval) {
  if (psi.size() != mesh.size())
    throw PreconditionError("density size does not match the mesh");
  check_proximity(mesh, eval);
  FieldSample out = make_sample(FieldKind::vector, eval);
  parallel_for(eval.size(), [&](std::size_t p) {
    Vec3c acc;
    for (std::size_t t = 0; t < mesh.size(); ++t) {
      cplx th = kernels::theta(eval[p] - mesh.centroids[t], lambda);
      acc += (th * mesh.areas[t]) * psi[t];
    }
    out.values[p] = embed(cplx(0, 0), acc);
  });
  return out;
}

FieldSample reconstruct_interior(const BoundaryData& data,
                                 const surf::SurfaceMesh& mesh, cplx lambda,
                                 const std::vector<Pt>& eval) {
  if (data.psi0.size() != mesh.size() || data.psi.size() != mesh.size())
    throw PreconditionError("density size does not match the mesh");
  check_proximity(mesh, eval);
  FieldSample out = make_sample(FieldKind::vector, eval);
  parallel_for(eval.size(), [&](std::size_t p) {
    Vec3c acc;
    for (std::size_t t = 0; t < mesh.size(); ++t) {
      cplx th;
      Vec3c gth;
      kernels::theta_pair(eval[p] - mesh.centroids[t], lambda, th, gth);
      const double a = mesh.areas[t];
      acc -= (data.psi0[t] * a) * gth;
      acc -= a * cross(gth, data.psi[t]);
      acc += (lambda * th * a) * data.psi[t];
    }
    out.values[p] = embed(cplx(0, 0), acc);
  });
  return out;
}

FieldSample reconstruct_interior(const BoundaryData& data,
                                 const surf::SurfaceMesh& mesh, cplx lambda,
                                 const PointGrid& eval) {
  FieldSample out = reconstruct_interior(data, mesh, lambda, eval.points);
  out.grid = eval;
  return out;
}

std::vector<cplx> BieSystem::apply(const std::vector<cplx>& x) const {
  const std::size_t dim = 3 * n;
  if (x.size() != dim) throw PreconditionError("operand size does not match the operator");
  std::vector<cplx> y(dim);
  parallel_for(dim, [&](std::size_t r) {
    const cplx* row = mat.data() + r * dim;
    cplx acc(0, 0);
    for (std::size_t c = 0; c < dim; ++c) acc += row[c] * x[c];
    y[r] = acc;
  });
  return y;
}

BieSystem assemble_bie(const surf::SurfaceMesh& mesh, cplx lambda) {
  BieSystem sys;
  sys.n = mesh.size();
  const std::size_t dim = 3 * sys.n;
  sys.mat.assign(dim * dim, cplx(0, 0));
  parallel_for(sys.n, [&](std::size_t i) {
    const Pt xi = mesh.centroids[i];
    const Pt ni = mesh.normals[i];
    const double nn[3] = {ni.x, ni.y, ni.z};
    const double cn[3][3] = {{0, -ni.z, ni.y}, {ni.z, 0, -ni.x}, {-ni.y, ni.x, 0}};
    for (std::size_t j = 0; j < sys.n; ++j) {
      cplx b[3][3];
      if (j == i) {
        // Self integral dropped; the 1/2 jump term fills the diagonal.
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) b[r][c] = (r == c) ? cplx(0.5, 0) : cplx(0, 0);
      } else {
        cplx th;
        Vec3c gth;
        kernels::theta_pair(xi - mesh.centroids[j], lambda, th, gth);
        const double a = mesh.areas[j];
        const cplx lta = lambda * th * a;
        const cplx g[3] = {gth.x, gth.y, gth.z};
        // n x (g x psi) = g (n.psi) - (n.g) psi.
        const cplx ndg = nn[0] * g[0] + nn[1] * g[1] + nn[2] * g[2];
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) {
            cplx v = lta * cn[r][c] - a * g[r] * nn[c];
            if (r == c) v += a * ndg;
            b[r][c] = v;
          }
      }
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          sys.mat[(3 * i + r) * dim + (3 * j + c)] = b[r][c];
    }
  });
  return sys;
}

std::vector<cplx> bie_apply_direct(const surf::SurfaceMesh& mesh, cplx lambda,
                                   const std::vector<cplx>& psi) {
  const std::size_t n = mesh.size();
  if (psi.size() != 3 * n) throw PreconditionError("operand size does not match the mesh");
  std::vector<cplx> y(3 * n);
  parallel_for(n, [&](std::size_t i) {
    const Pt xi = mesh.centroids[i];
    const Vec3c nic = to_vec3c(mesh.normals[i]);
    Vec3c acc{psi[3 * i] * 0.5, psi[3 * i + 1] * 0.5, psi[3 * i + 2] * 0.5};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cplx th;
      Vec3c gth;
      kernels::theta_pair(xi - mesh.centroids[j], lambda, th, gth);
      const Vec3c pj{psi[3 * j], psi[3 * j + 1], psi[3 * j + 2]};
      acc += mesh.areas[j] *
             cross(nic, (lambda * th) * pj - cross(gth, pj));
    }
    y[3 * i] = acc.x;
    y[3 * i + 1] = acc.y;
    y[3 * i + 2] = acc.z;
  });
  return y;
}

std::vector<cplx> bie_rhs(const surf::SurfaceMesh& mesh, cplx lambda,
                          const std::vector<cplx>& psi0) {
  const std::size_t n = mesh.size();
  if (psi0.size() != n) throw PreconditionError("density size does not match the mesh");
  std::vector<cplx> b(3 * n);
  parallel_for(n, [&](std::size_t i) {
    const Pt xi = mesh.centroids[i];
    Vec3c s;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      s += (psi0[j] * mesh.areas[j]) *
           kernels::grad_theta(xi - mesh.centroids[j], lambda);
    }
    Vec3c r = cross(to_vec3c(mesh.normals[i]), s);
    b[3 * i] = r.x;
    b[3 * i + 1] = r.y;
    b[3 * i + 2] = r.z;
  });
  return b;
}

std::vector<cplx> boundary_psi0(const VoxelDomain& dom,
                                const rightinv::SourceField& g,
                                const std::vector<cplx>& phi0, cplx lambda,
                                const surf::SurfaceMesh& mesh) {
  if (phi0.size() != mesh.size())
    throw PreconditionError("phi0 size does not match the mesh");
  if (lambda == cplx(0, 0))
    throw PreconditionError("lambda must be nonzero for the right inverse");
  // T2[g] at the vertices; the summation there is regular (points inside a
  // source cell fall under the analytic singular-cell rule).
  FieldSample t2v = potentials::t2(dom, g.cells, lambda, +1, mesh.vertices);

  std::vector<cplx> psi0(mesh.size());
  parallel_for(mesh.size(), [&](std::size_t t) {
    const std::array<int, 3>& tri = mesh.triangles[t];
    Pt grad[3];
    hat_gradients(mesh, t, grad);
    const Vec3c nc = to_vec3c(mesh.normals[t]);
    // n . curl T2 = surface divergence of T2 x n, per flat triangle.
    cplx div_g(0, 0);
    for (int k = 0; k < 3; ++k) {
      Vec3c rot = cross(vec(t2v.values[tri[k]]), nc);
      div_g += dot(rot, to_vec3c(grad[k]));
    }
    cplx rn = (dot(vec(g.at(mesh.centroids[t])), nc) - div_g) / lambda;
    psi0[t] = phi0[t] - rn;
  });
  return psi0;
}

namespace {

// The factorization below holds the *transpose* of the operator (the matrix
// is assembled row-major and mapped column-major so it can be factored in
// place; the level-4 mesh's matrix is 3.8 GB and a copying decomposition
// would not fit). Solves with the operator therefore go through
// lu.transpose(), and solves with its adjoint conjugate through lu itself.
using InplaceLU = Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXcd>>;

// Hager-style 1-norm estimate of the inverse from the factorization.
double inverse_norm_estimate(const InplaceLU& lu, std::size_t dim) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim);
  Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, cplx(1.0 / double(n), 0));
  double est = 0;
  Eigen::Index last = -1;
  for (int iter = 0; iter < 5; ++iter) {
    Eigen::VectorXcd y = lu.transpose().solve(x);
    est = y.cwiseAbs().sum();
    Eigen::VectorXcd xi(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      double m = std::abs(y[k]);
      xi[k] = m > 0 ? y[k] / m : cplx(1, 0);
    }
    // Adjoint solve: A^H z = xi with the stored M = A^T reads
    // conj(M) z = xi, i.e. z = conj(M^{-1} conj(xi)).
    Eigen::VectorXcd z = lu.solve(xi.conjugate()).conjugate();
    Eigen::Index j = 0;
    double zmax = z.cwiseAbs().maxCoeff(&j);
    if (j == last || zmax <= std::real(z.dot(x))) break;
    x.setZero();
    x[j] = cplx(1, 0);
    last = j;
  }
  return est;
}

double vec_norm(const std::vector<cplx>& v) {
  double s = 0;
  for (const cplx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

// ||w.n - phi0|| / ||phi0|| sampled just inside a subset of the centroids,
// with R[g] there taken by a short central-difference stencil on T2.
double boundary_residual(const VoxelDomain& dom, const rightinv::SourceField& g,
                         const BoundaryData& data, cplx lambda,
                         const surf::SurfaceMesh& mesh) {
  const std::size_t n = mesh.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 128);
  const double off = 2.5 * mesh.mean_diameter();
  std::vector<std::size_t> rows;
  std::vector<Pt> vpts;
  for (std::size_t t = 0; t < n; t += stride) {
    Pt x = mesh.centroids[t] - off * mesh.normals[t];
    if (!dom.shape.inside(x)) continue;
    rows.push_back(t);
    vpts.push_back(x);
  }
  if (vpts.empty()) return 0;

  FieldSample u = reconstruct_interior(data, mesh, lambda, vpts);

  const double s = 0.5 * dom.h;
  const Pt axes[3] = {{s, 0, 0}, {0, s, 0}, {0, 0, s}};
  std::vector<Pt> spts;
  spts.reserve(6 * vpts.size());
  for (Pt v : vpts)
    for (int a = 0; a < 3; ++a) {
      spts.push_back(v + axes[a]);
      spts.push_back(v - axes[a]);
    }
  FieldSample t2s = potentials::t2(dom, g.cells, lambda, +1, spts);

  double num = 0, den = 0;
  for (std::size_t v = 0; v < vpts.size(); ++v) {
    Vec3c d[3];  // central differences along x, y, z
    for (int a = 0; a < 3; ++a) {
      Vec3c fp = vec(t2s.values[6 * v + 2 * a]);
      Vec3c fm = vec(t2s.values[6 * v + 2 * a + 1]);
      d[a] = (1.0 / (2.0 * s)) * (fp - fm);
    }
    Vec3c curl{d[1].z - d[2].y, d[2].x - d[0].z, d[0].y - d[1].x};
    Vec3c rv = (1.0 / lambda) * (vec(g.at(vpts[v])) - curl);
    cplx wn = dot(rv + vec(u.values[v]), to_vec3c(mesh.normals[rows[v]]));
    num += std::norm(wn - data.phi0[rows[v]]);
    den += std::norm(data.phi0[rows[v]]);
  }
  return std::sqrt(num / std::max(den, kTiny));
}

}  // namespace

NeumannSolution solve_neumann(const VoxelDomain& dom,
                              const rightinv::SourceField& g,
                              const std::vector<cplx>& phi0, cplx lambda,
                              const surf::SurfaceMesh& mesh,
                              const PointGrid& eval, double compat_tol) {
  if (phi0.size() != mesh.size())
    throw PreconditionError("phi0 size does not match the mesh");

  // Solvability: int (g.n - lambda phi0) ds = 0 up to quadrature error.
  cplx defect(0, 0);
  double scale = 0;
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    cplx gn = dot(vec(g.at(mesh.centroids[t])), to_vec3c(mesh.normals[t]));
    cplx lp = lambda * phi0[t];
    defect += (gn - lp) * mesh.areas[t];
    scale += (std::abs(gn) + std::abs(lp)) * mesh.areas[t];
  }
  NeumannDiagnostics diag;
  diag.compat = std::abs(defect) / std::max(scale, kTiny);
  if (diag.compat > compat_tol) {
    std::ostringstream msg;
    msg << "boundary datum violates the solvability condition: relative "
           "defect "
        << diag.compat << " exceeds " << compat_tol;
    throw CompatibilityError(msg.str());
  }

  BoundaryData data;
  data.phi0 = phi0;
  data.psi0 = boundary_psi0(dom, g, phi0, lambda, mesh);

  BieSystem sys = assemble_bie(mesh, lambda);
  std::vector<cplx> rhs = bie_rhs(mesh, lambda, data.psi0);

  const std::size_t dim = 3 * mesh.size();

  // Operator 1-norm (max column sum), taken while the assembly buffer still
  // holds the matrix; the in-place factorization overwrites it. Row-major
  // storage, so stream rows and accumulate per-column sums.
  std::vector<double> colsum(dim, 0.0);
  for (std::size_t r = 0; r < dim; ++r) {
    const cplx* row = sys.mat.data() + r * dim;
    for (std::size_t c = 0; c < dim; ++c) colsum[c] += std::abs(row[c]);
  }
  double anorm = 0;
  for (double s : colsum) anorm = std::max(anorm, s);

  Eigen::Map<Eigen::MatrixXcd> mmap(sys.mat.data(), static_cast<Eigen::Index>(dim),
                                    static_cast<Eigen::Index>(dim));
  InplaceLU lu(mmap);  // factors M = A^T in place; see note above
  Eigen::Map<const Eigen::VectorXcd> bmap(rhs.data(), static_cast<Eigen::Index>(dim));
  Eigen::VectorXcd x = lu.transpose().solve(bmap);
  diag.condition = anorm * inverse_norm_estimate(lu, dim);

  data.psi.resize(mesh.size());
  double defect_t = 0;
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    Vec3c p{x[3 * t], x[3 * t + 1], x[3 * t + 2]};
    Vec3c nc = to_vec3c(mesh.normals[t]);
    cplx pn = dot(p, nc);
    defect_t = std::max(defect_t, std::abs(pn));
    data.psi[t] = p - pn * nc;
  }
  diag.tangential_defect = defect_t;

  std::vector<cplx> flat(dim);
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    flat[3 * t] = data.psi[t].x;
    flat[3 * t + 1] = data.psi[t].y;
    flat[3 * t + 2] = data.psi[t].z;
  }
  // The assembly buffer now holds LU factors, so the residual check applies
  // the operator by direct summation (same arithmetic as the assembly).
  std::vector<cplx> res = bie_apply_direct(mesh, lambda, flat);
  for (std::size_t k = 0; k < dim; ++k) res[k] -= rhs[k];
  diag.bie_residual = vec_norm(res) / std::max(vec_norm(flat), kTiny);

  FieldSample r = rightinv::r_lambda(dom, g, lambda, eval);
  FieldSample u = reconstruct_interior(data, mesh, lambda, *r.grid);

  NeumannSolution sol;
  sol.w = r;
  for (std::size_t k = 0; k < sol.w.size(); ++k) sol.w.values[k] += u.values[k];
  sol.data = std::move(data);
  diag.bc_residual = boundary_residual(dom, g, sol.data, lambda, mesh);
  sol.diag = diag;
  return sol;
}

}  // namespace curlam::neumann
