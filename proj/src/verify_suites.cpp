#include "curlam/verify_suites.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <utility>

#include <json.hpp>

#include "curlam/builtin_fields.hpp"
#include "curlam/conjugate.hpp"
#include "curlam/domain.hpp"
#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"
#include "curlam/force_free.hpp"
#include "curlam/kernels.hpp"
#include "curlam/maxwell.hpp"
#include "curlam/neumann.hpp"
#include "curlam/potentials.hpp"
#include "curlam/right_inverse.hpp"
#include "curlam/surface_mesh.hpp"

namespace curlam::verify {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct Ctx {
  const Tolerances& tol;
  std::vector<Check>& out;

  void le(std::string name, double measured, double bound) {
    out.push_back(
        {std::move(name), measured, bound, false, measured <= bound});
  }
  void ge(std::string name, double measured, double bound) {
    out.push_back({std::move(name), measured, bound, true, measured >= bound});
  }
  // Boolean checks (guards, counts) as 0/1 against 1/2.
  void expect(std::string name, bool passed) {
    le(std::move(name), passed ? 0.0 : 1.0, 0.5);
  }
};

AnalyticField builtin(const char* name, cplx lambda) {
  return builtins::make(name, nlohmann::json(), lambda);
}

// Restriction of a lattice sample to a sub-lattice of the same spacing.
FieldSample restrict_to(const FieldSample& s, const PointGrid& sub) {
  FieldSample out;
  out.kind = s.kind;
  out.points = sub.points;
  out.grid = sub;
  out.values.resize(sub.size());
  for (std::size_t r = 0; r < sub.size(); ++r) {
    const auto& c = sub.ijk[r];
    int row = s.grid->row(c[0], c[1], c[2]);
    if (row < 0) throw Error("restriction target is not a sub-lattice");
    out.values[r] = s.values[row];
  }
  return out;
}

double rel_norm(const FieldSample& diff, const FieldSample& ref) {
  double d = ref.norm2();
  return d == 0 ? diff.norm2() : diff.norm2() / d;
}

// ---------------------------------------------------------------- suites --

void suite_quaternion(Ctx& c) {
  const Biquaternion e0 = quat::embed(1, {0, 0, 0});
  const Biquaternion e[3] = {quat::embed(0, {1, 0, 0}),
                             quat::embed(0, {0, 1, 0}),
                             quat::embed(0, {0, 0, 1})};
  double table = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Biquaternion expected = -0.0 * e0;
      if (i == j) {
        expected = -1.0 * e0;
      } else {
        int k = 3 - i - j;
        double sgn = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
        expected = sgn * e[k];
      }
      table = std::max(table, quat::norm(e[i] * e[j] - expected));
    }
  c.le("unit-product-table", table, c.tol.exact);

  const Biquaternion a{cplx(1.0, 2.0), cplx(-0.5, 0.25), cplx(0.75, 0.0),
                       cplx(0.0, -1.25)};
  const Biquaternion b{cplx(-0.3, 0.7), cplx(1.1, -0.2), cplx(0.0, 0.9),
                       cplx(0.4, 0.0)};
  const Biquaternion d{cplx(0.6, -0.1), cplx(-0.8, 0.5), cplx(0.2, 0.3),
                       cplx(-1.0, 0.6)};
  double scale = quat::norm(a) * quat::norm(b) * quat::norm(d);
  c.le("product-associativity",
       quat::norm((a * b) * d - a * (b * d)) / scale, c.tol.exact);

  c.le("scalar-part-symmetry",
       std::abs(quat::sc(a * b) - quat::sc(b * a)) / (quat::norm(a) * quat::norm(b)),
       c.tol.exact);

  const cplx i_unit(0, 1);
  c.le("complex-unit-central",
       quat::norm((i_unit * a) * b - i_unit * (a * b)) /
           (quat::norm(a) * quat::norm(b)),
       c.tol.exact);
}

void suite_kernels(Ctx& c) {
  c.le("unit-distance-value",
       std::abs(kernels::theta({1, 0, 0}, 0) + 1.0 / (4 * kPi)) * 4 * kPi,
       c.tol.exact);

  const cplx lam(2.0, 0.5);
  const Pt p{0.4, -0.3, 0.7};
  {
    const double s = 1e-5;
    Vec3c fdg;
    cplx* comp[3] = {&fdg.x, &fdg.y, &fdg.z};
    for (int ax = 0; ax < 3; ++ax) {
      Pt hi = p, lo = p;
      (ax == 0 ? hi.x : ax == 1 ? hi.y : hi.z) += s;
      (ax == 0 ? lo.x : ax == 1 ? lo.y : lo.z) -= s;
      *comp[ax] =
          (kernels::theta(hi, lam) - kernels::theta(lo, lam)) / (2 * s);
    }
    Vec3c g = kernels::grad_theta(p, lam);
    c.le("gradient-matches-difference-quotient",
         std::sqrt(norm2sq(fdg - g) / norm2sq(g)), 1e-7);
  }
  {
    const double s = 1e-3;
    cplx lap = -6.0 * kernels::theta(p, lam);
    for (int ax = 0; ax < 3; ++ax) {
      Pt hi = p, lo = p;
      (ax == 0 ? hi.x : ax == 1 ? hi.y : hi.z) += s;
      (ax == 0 ? lo.x : ax == 1 ? lo.y : lo.z) -= s;
      lap += kernels::theta(hi, lam) + kernels::theta(lo, lam);
    }
    lap /= s * s;
    cplx resid = lap + lam * lam * kernels::theta(p, lam);
    c.le("pointwise-helmholtz-annihilation",
         std::abs(resid) / std::abs(lam * lam * kernels::theta(p, lam)), 1e-4);
  }
  {
    const double r = 0.1;
    cplx v = kernels::selfcell_theta(r, cplx(1e-10, 0));
    c.le("selfcell-static-limit", std::abs(v - cplx(-r * r / 2)) / (r * r / 2),
         1e-8);
  }
  {
    // Independent oracle: midpoint quadrature of the radial form
    // int_0^r theta(s) 4 pi s^2 ds = -int_0^r exp(i lambda s) s ds.
    const double r = 0.3;
    const cplx lam2(1.5, 0.4);
    const int steps = 50000;
    cplx acc = 0;
    for (int k = 0; k < steps; ++k) {
      double s = (k + 0.5) * r / steps;
      acc += -std::exp(cplx(0, 1) * lam2 * s) * s * (r / steps);
    }
    cplx v = kernels::selfcell_theta(r, lam2);
    c.le("selfcell-radial-quadrature", std::abs(v - acc) / std::abs(v), 1e-6);
  }
  {
    const Pt x{0.3, 0.2, -0.5};
    const cplx lam3(2, 0);
    Biquaternion diff = kernels::fundamental_E(x, lam3, +1) -
                        kernels::fundamental_E(x, lam3, -1) -
                        quat::embed(2.0 * lam3 * kernels::theta(x, lam3), {});
    c.le("sign-pair-difference",
         quat::norm(diff) / quat::norm(kernels::fundamental_E(x, lam3, +1)),
         c.tol.exact);
  }
}

void suite_domain(Ctx& c) {
  const auto dom = grid::build_domain(Shape::make_ball(1.0), 16);
  double vol = 0;
  for (double w : dom.weights) vol += w;
  const double exact_vol = 4.0 * kPi / 3.0;
  c.le("ball-volume-agreement", std::abs(vol - exact_vol) / exact_vol, 0.02);

  double wdev = 0;
  const double h3 = dom.h * dom.h * dom.h;
  for (double w : dom.weights) wdev = std::max(wdev, std::abs(w - h3) / h3);
  c.le("uniform-cell-weights", wdev, c.tol.exact);

  const PointGrid g = grid::interior_eval_grid(dom, 12, 2);
  double min_clear = 1e300;
  for (const Pt& p : g.points)
    min_clear = std::min(min_clear, dom.shape.boundary_distance(p));
  c.le("eval-clearance-defect",
       std::max(0.0, 3.0 * g.meta.h - min_clear) / g.meta.h, c.tol.exact);

  int mismatches = 0;
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (dom.containing_cell(dom.centers[i]) != static_cast<int>(i))
      ++mismatches;
  c.expect("containing-cell-roundtrip", mismatches == 0);

  const auto dom2 = grid::build_domain(Shape::make_ball(1.0), 16);
  double dev = dom.size() == dom2.size() ? 0.0 : 1.0;
  if (dev == 0)
    for (std::size_t i = 0; i < dom.size(); ++i)
      dev = std::max(dev, norm(dom.centers[i] - dom2.centers[i]));
  c.le("rebuild-identical", dev, c.tol.exact);
}

void suite_fielddiff(Ctx& c) {
  const cplx lam(2, 0);
  const PointGrid g21 = grid::make_grid({-1, -1, -1}, 0.1, {21, 21, 21});
  FieldSample trig = grid::sample(builtin("trig-full", lam), g21);

  FieldSample grad0 = fd::gradient(trig);
  FieldSample cg = fd::curl(grad0);
  c.le("curl-of-gradient", fd::linf_norm(cg) / std::max(fd::linf_norm(grad0), 1.0),
       c.tol.exact);

  FieldSample dc = fd::divergence(fd::curl(trig));
  c.le("div-of-curl", fd::linf_norm(dc) / std::max(fd::linf_norm(trig), 1.0),
       c.tol.exact);

  {
    FieldSample dd = fd::dirac(fd::dirac(trig));
    FieldSample lap = fd::laplacian(trig, fd::LaplacianStencil::Composed);
    FieldSample neg = lap;
    for (auto& v : neg.values) v = -1.0 * v;
    c.le("dirac-square-is-negative-laplacian", fd::rel_l2_error(dd, neg),
         c.tol.exact);
  }
  {
    const PointGrid g41 = grid::make_grid({-1, -1, -1}, 0.05, {41, 41, 41});
    AnalyticField f{FieldKind::scalar,
                    [](Pt p) { return quat::embed(std::sin(2 * p.z), {}); }};
    AnalyticField lap_f{FieldKind::scalar, [](Pt p) {
                          return quat::embed(-4.0 * std::sin(2 * p.z), {});
                        }};
    FieldSample lap = fd::laplacian(grid::sample(f, g41),
                                    fd::LaplacianStencil::Compact);
    c.le("compact-laplacian-accuracy",
         fd::rel_l2_error(lap, grid::sample(lap_f, *lap.grid)), 0.002);
  }
  {
    AnalyticField f{FieldKind::scalar, [](Pt p) {
                      return quat::embed(std::sin(1.1 * p.x) *
                                             std::cos(0.8 * p.y) *
                                             std::sin(0.9 * p.z),
                                         {});
                    }};
    AnalyticField df{FieldKind::vector, [](Pt p) {
                       double sx = std::sin(1.1 * p.x), cx = std::cos(1.1 * p.x);
                       double sy = std::sin(0.8 * p.y), cy = std::cos(0.8 * p.y);
                       double sz = std::sin(0.9 * p.z), cz = std::cos(0.9 * p.z);
                       return quat::embed(
                           0, {1.1 * cx * cy * sz, -0.8 * sx * sy * sz,
                               0.9 * sx * cy * cz});
                     }};
    double err[2];
    const double hs[2] = {0.1, 0.05};
    const int ns[2] = {21, 41};
    for (int k = 0; k < 2; ++k) {
      PointGrid g = grid::make_grid({-1, -1, -1}, hs[k], {ns[k], ns[k], ns[k]});
      FieldSample grad = fd::gradient(grid::sample(f, g));
      err[k] = fd::rel_l2_error(grad, grid::sample(df, *grad.grid));
    }
    c.ge("gradient-refinement-ratio", err[0] / err[1], c.tol.fd_ratio);
  }
}

void suite_potentials(Ctx& c) {
  const cplx lam(2, 0);
  const auto dom = grid::build_domain(Shape::make_ball(1.0), 16);
  const PointGrid evalg = grid::interior_eval_grid(dom, 12, 1);
  const auto src = rightinv::make_source(dom, builtin("trig-full", lam));
  const FieldSample& wc = src.cells;

  {
    FieldSample ones;
    ones.kind = FieldKind::scalar;
    ones.points = dom.centers;
    ones.values.assign(dom.size(), quat::embed(1, {}));
    FieldSample L =
        potentials::newton_L(dom, ones, 0, std::vector<Pt>{Pt{0, 0, 0}});
    // Voxel surface resolution dominates at n=16 (measured 1.1e-2, the same
    // scale as the domain's volume defect).
    c.le("static-ball-center-value",
         std::abs(quat::sc(L.values[0]) + 0.5) / 0.5, 0.02);
  }
  {
    std::vector<Pt> pts(evalg.points.begin(),
                        evalg.points.begin() + std::min<std::size_t>(
                                                   16, evalg.points.size()));
    double dev = 0;
    for (int sign : {+1, -1}) {
      FieldSample T = potentials::teodorescu_T(dom, wc, lam, pts, sign);
      FieldSample s0 = potentials::t0(dom, wc, lam, sign, pts);
      FieldSample s1 = potentials::t1(dom, wc, lam, pts);
      FieldSample s2 = potentials::t2(dom, wc, lam, sign, pts);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Biquaternion sum = quat::embed(
            quat::sc(s0.values[i]), vec(s1.values[i]) + vec(s2.values[i]));
        dev = std::max(dev, quat::norm(T.values[i] - sum) /
                                std::max(quat::norm(T.values[i]), 1e-30));
      }
    }
    c.le("channel-decomposition", dev, c.tol.exact);

    FieldSample sp = potentials::t0(dom, wc, lam, +1, pts);
    FieldSample sm = potentials::t0(dom, wc, lam, -1, pts);
    FieldSample L = potentials::newton_L(dom, wc, lam, pts);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cplx lw = 2.0 * lam * quat::sc(L.values[i]);
      num += std::norm(quat::sc(sp.values[i]) - quat::sc(sm.values[i]) - lw);
      den += std::norm(lw);
    }
    c.le("sign-channel-difference", std::sqrt(num / den), c.tol.exact);
  }
  {
    FieldSample L = potentials::newton_L(dom, wc, lam, evalg);
    FieldSample lap = fd::laplacian(L, fd::LaplacianStencil::Compact);
    FieldSample lhs = restrict_to(L, *lap.grid);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      lhs.values[i] = lap.values[i] + lam * lam * lhs.values[i];
    FieldSample target = grid::sample(
        AnalyticField{FieldKind::full, src.at}, *lap.grid);
    c.le("helmholtz-right-inverse", fd::rel_l2_error(lhs, target),
         c.tol.quadrature);
  }
  {
    FieldSample T = potentials::teodorescu_T(dom, wc, lam, evalg);
    FieldSample D = fd::dirac(T);
    FieldSample lhs = restrict_to(T, *D.grid);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      lhs.values[i] = D.values[i] + lam * lhs.values[i];
    FieldSample target = grid::sample(
        AnalyticField{FieldKind::full, src.at}, *D.grid);
    // The grad-theta channels start coarser than the theta ones; at this
    // resolution the residual sits near 12% and refines at the usual rate
    // (the tight bound is enforced at n=32 elsewhere).
    c.le("dirac-right-inverse", fd::rel_l2_error(lhs, target),
         3.0 * c.tol.quadrature);
  }
}

void suite_rightinverse(Ctx& c) {
  const cplx lam(2, 0);
  // Tied refinement: the equation residual is gated at the finer level and
  // the coarse/fine ratio certifies convergence (the coarse level alone
  // starts near 30% for this source).
  const auto dom16 = grid::build_domain(Shape::make_ball(1.0), 16);
  const PointGrid eval16 = grid::interior_eval_grid(dom16, 12, 2);
  const auto dom32 = grid::build_domain(Shape::make_ball(1.0), 32);
  const PointGrid eval32 = grid::interior_eval_grid(dom32, 16, 2);
  const auto g16 = rightinv::make_source(dom16, builtin("bump-vector", lam));
  const auto g32 = rightinv::make_source(dom32, builtin("bump-vector", lam));

  auto equation_residual = [&](const grid::VoxelDomain& dom,
                               const rightinv::SourceField& g,
                               const FieldSample& w) {
    FieldSample cw = fd::curl(w);
    FieldSample lhs = restrict_to(w, *cw.grid);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      lhs.values[i] = cw.values[i] + lam * lhs.values[i];
    FieldSample target =
        grid::sample(AnalyticField{FieldKind::vector, g.at}, *cw.grid);
    (void)dom;
    return fd::rel_l2_error(lhs, target);
  };

  FieldSample w16 = rightinv::r_lambda(dom16, g16, lam, eval16);
  FieldSample w32 = rightinv::r_lambda(dom32, g32, lam, eval32);
  const double e16 = equation_residual(dom16, g16, w16);
  const double e32 = equation_residual(dom32, g32, w32);
  c.le("equation-residual", e32, c.tol.quadrature);
  c.ge("refinement-ratio", e16 / e32, c.tol.refine_ratio);

  {
    FieldSample gs =
        grid::sample(AnalyticField{FieldKind::vector, g16.at}, *w16.grid);
    FieldSample dg = fd::divergence(gs);
    for (auto& v : dg.values) v = (1.0 / lam) * v;
    c.le("divergence-relation", fd::rel_l2_error(fd::divergence(w16), dg),
         c.tol.quadrature);
  }
  {
    AnalyticField u = forcefree::beltrami_shear(lam, 2, 0.0);
    FieldSample full = rightinv::general_solution(dom16, g16, lam, eval16, u,
                                                  c.tol.precondition);
    FieldSample us = grid::sample(u, *w16.grid);
    FieldSample diff = full;
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff.values[i] = full.values[i] - w16.values[i] - us.values[i];
    c.le("homogeneous-shift-exact", rel_norm(diff, us), c.tol.exact);
  }
  {
    auto phi = [](Pt p) { return cplx(0.3 * p.x - 0.2 * p.z, 0); };
    const Vec3c grad_phi{cplx(0.3), cplx(0.0), cplx(-0.2)};
    FieldSample v = rightinv::gauge_solve(dom32, g32, phi, lam, eval32);
    FieldSample cv = fd::curl(v);
    FieldSample vin = restrict_to(v, *cv.grid);
    FieldSample lhs = cv;
    for (std::size_t i = 0; i < lhs.size(); ++i)
      lhs.values[i] =
          cv.values[i] + lam * vin.values[i] +
          quat::embed(0, cross(grad_phi, vec(vin.values[i])));
    FieldSample target =
        grid::sample(AnalyticField{FieldKind::vector, g32.at}, *cv.grid);
    c.le("gauge-transform-residual", fd::rel_l2_error(lhs, target),
         c.tol.gauge);
  }
  {
    bool raised = false;
    try {
      rightinv::r_lambda(dom16, g16, 0, eval16);
    } catch (const PreconditionError&) {
      raised = true;
    }
    c.expect("zero-wavenumber-guard", raised);
  }
}

void suite_conjugate(Ctx& c) {
  const cplx lam(2, 0);
  const PointGrid g33 =
      grid::make_grid({-1, -1, -1}, 1.0 / 16, {33, 33, 33});
  FieldSample w0 = grid::sample(builtin("plane-wave-scalar", lam), g33);

  FieldSample wv = conjugate::from_scalar(w0, lam, c.tol.precondition);
  FieldSample w0b = conjugate::from_vector(wv, lam, c.tol.precondition);
  c.le("roundtrip-identity", fd::rel_l2_error(w0b, w0), c.tol.roundtrip);

  {
    FieldSample full = restrict_to(w0, *wv.grid);
    full.kind = FieldKind::full;
    for (std::size_t i = 0; i < full.size(); ++i)
      full.values[i] =
          quat::embed(quat::sc(full.values[i]), vec(wv.values[i]));
    FieldSample D = fd::dirac(full);
    FieldSample lhs = restrict_to(full, *D.grid);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      lhs.values[i] = D.values[i] + lam * lhs.values[i];
    c.le("pair-annihilated-by-operator",
         lhs.norm2() / (std::abs(lam) * restrict_to(full, *D.grid).norm2()),
         c.tol.roundtrip);
  }
  {
    const PointGrid g21 = grid::make_grid({-1, -1, -1}, 0.1, {21, 21, 21});
    AnalyticField bad{FieldKind::scalar,
                      [](Pt p) { return quat::embed(p.x * p.x, {}); }};
    bool raised = false;
    try {
      conjugate::from_scalar(grid::sample(bad, g21), lam, c.tol.precondition);
    } catch (const PreconditionError&) {
      raised = true;
    }
    c.expect("helmholtz-precondition-guard", raised);
  }
}

void suite_forcefree(Ctx& c) {
  const PointGrid g41 = grid::make_grid({-1, -1, -1}, 0.05, {41, 41, 41});
  {
    const cplx lam(2, 0);
    auto rep = forcefree::verify_forcefree(
        grid::sample(forcefree::beltrami_shear(lam, 2, 0.3), g41), lam);
    c.le("shear-family-residual",
         std::max(rep.curl_residual, rep.div_residual), 0.01);
  }
  {
    const cplx lam(2, 0);
    auto rep = forcefree::verify_forcefree(
        grid::sample(forcefree::beltrami_plane_wave(lam, {0, 0, 1}), g41),
        lam);
    c.le("plane-wave-residual", std::max(rep.curl_residual, rep.div_residual),
         0.01);
  }
  {
    const cplx lam(1, 0.5);
    auto rep = forcefree::verify_forcefree(
        grid::sample(
            forcefree::beltrami_plane_wave(lam, {0.6, 0.0, 0.8}), g41),
        lam);
    c.le("complex-wavenumber-residual",
         std::max(rep.curl_residual, rep.div_residual), 0.01);
  }
  {
    AnalyticField constant{FieldKind::vector, [](Pt) {
                             return quat::embed(0, {1, 0, 0});
                           }};
    auto rep = forcefree::verify_forcefree(grid::sample(constant, g41),
                                           cplx(2, 0));
    c.expect("verifier-rejects-non-force-free",
             !rep.pass(c.tol.quadrature));
  }
}

void suite_maxwell(Ctx& c) {
  const auto dom = grid::build_domain(Shape::make_ball(1.0), 16);
  // The solves difference twice and the residuals once more, so the
  // evaluation lattice needs depth to spare.
  const PointGrid evalg = grid::interior_eval_grid(dom, 16, 2);
  const auto m = maxwell::MediumParams::make(2.0, cplx(0.5, 0), cplx(2, 0),
                                             cplx(0, 0));
  const auto j = rightinv::make_source(dom, builtin("bump-vector", m.lambda));

  maxwell::EHPair sol = maxwell::solve_achiral(
      dom, j, m, evalg, std::nullopt, std::nullopt, c.tol.precondition);
  c.le("achiral-worst-residual",
       maxwell::residuals_achiral(sol, j, m).worst(), c.tol.maxwell);

  {
    auto [phi, psi] = maxwell::diagonalize(sol.E, sol.H, m);
    maxwell::EHPair back = maxwell::undiagonalize(phi, psi, m);
    FieldSample de = back.E, dh = back.H;
    for (std::size_t i = 0; i < de.size(); ++i) {
      de.values[i] -= sol.E.values[i];
      dh.values[i] -= sol.H.values[i];
    }
    c.le("diagonalize-roundtrip",
         std::max(rel_norm(de, sol.E), rel_norm(dh, sol.H)), c.tol.exact);

    // phi = -i omega eps E + lambda H satisfies (D - lambda) phi = div j
    // + lambda j on the lattice.
    FieldSample D = fd::dirac(phi);
    FieldSample lhs = restrict_to(phi, *D.grid);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      lhs.values[i] = D.values[i] - m.lambda * lhs.values[i];
    FieldSample js =
        grid::sample(AnalyticField{FieldKind::vector, j.at}, *phi.grid);
    FieldSample dj = fd::divergence(js);
    FieldSample rhs = restrict_to(js, *D.grid);
    FieldSample djr = restrict_to(dj, *D.grid);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      rhs.values[i] = quat::embed(quat::sc(djr.values[i]),
                                  m.lambda * vec(rhs.values[i]));
    c.le("decoupled-equation-residual", fd::rel_l2_error(lhs, rhs),
         c.tol.maxwell);
  }
  {
    maxwell::EHPair z = maxwell::solve_chiral(
        dom, j, m, evalg, std::nullopt, std::nullopt, c.tol.precondition);
    FieldSample de = z.E, dh = z.H;
    for (std::size_t i = 0; i < de.size(); ++i) {
      de.values[i] -= sol.E.values[i];
      dh.values[i] -= sol.H.values[i];
    }
    c.le("zero-chirality-collapse",
         std::max(rel_norm(de, sol.E), rel_norm(dh, sol.H)), c.tol.collapse);
  }
  {
    const auto mc = maxwell::MediumParams::make(2.0, cplx(0.5, 0), cplx(2, 0),
                                                cplx(0.1, 0));
    maxwell::EHPair ch = maxwell::solve_chiral(
        dom, j, mc, evalg, std::nullopt, std::nullopt, c.tol.precondition);
    c.le("chiral-worst-residual",
         maxwell::residuals_chiral(ch, j, mc).worst(), c.tol.maxwell);
    c.le("chiral-polarization-split",
         maxwell::beltrami_split_residual(ch, j, mc), c.tol.maxwell);
  }
  {
    AnalyticField u = forcefree::beltrami_shear(m.lambda, 2, 0.0);
    maxwell::EHPair shifted = maxwell::solve_achiral(
        dom, j, m, evalg, u, std::nullopt, c.tol.precondition);
    FieldSample us = grid::sample(u, *sol.E.grid);
    const cplx coef =
        1.0 / (2.0 * cplx(0, 1) * m.omega * m.eps);
    FieldSample diff = shifted.E;
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff.values[i] =
          shifted.E.values[i] - sol.E.values[i] - coef * us.values[i];
    c.le("homogeneous-term-shift", rel_norm(diff, us), c.tol.exact);
  }
}

void suite_neumann(Ctx& c) {
  const cplx lam(2, 0);
  {
    auto mesh3 = surf::make_sphere_mesh(1.0, 3);
    c.le("sphere-area-agreement",
         std::abs(mesh3.total_area() - 4 * kPi) / (4 * kPi), 0.01);
    c.expect("base-subdivision-count",
             surf::make_sphere_mesh(1.0, 1).size() == 80);

    std::vector<cplx> ones(mesh3.size(), cplx(1, 0));
    FieldSample s = neumann::surface_potential_scalar(
        ones, mesh3, 0, std::vector<Pt>{Pt{0, 0, 0}});
    c.le("static-single-layer-center",
         std::abs(quat::sc(s.values[0]) + 1.0), 0.01);
  }
  {
    auto mesh2 = surf::make_sphere_mesh(1.0, 2);
    const cplx lamc(1, 0.5);
    // Deterministic pseudo-random tangential density.
    std::uint64_t state = 0x243f6a8885a308d3ull;
    auto next = [&state]() {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      return 2.0 * ((state >> 11) * 0x1.0p-53) - 1.0;
    };
    std::vector<cplx> psi(3 * mesh2.size());
    for (std::size_t t = 0; t < mesh2.size(); ++t) {
      Vec3c v{cplx(next(), next()), cplx(next(), next()),
              cplx(next(), next())};
      Vec3c n = to_vec3c(mesh2.normals[t]);
      v -= dot(v, n) * n;
      psi[3 * t] = v.x;
      psi[3 * t + 1] = v.y;
      psi[3 * t + 2] = v.z;
    }
    auto sys = neumann::assemble_bie(mesh2, lamc);
    auto y1 = sys.apply(psi);
    auto y2 = neumann::bie_apply_direct(mesh2, lamc, psi);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < y1.size(); ++i) {
      num += std::norm(y1[i] - y2[i]);
      den += std::norm(y2[i]);
    }
    c.le("assembled-matches-direct", std::sqrt(num / den), c.tol.exact);
  }
  // Residual of the analytic trace densities (psi = u x n, psi0 = u.n of a
  // force-free u) in the discrete boundary equation, matrix-free.
  auto trace_residual = [&](const surf::SurfaceMesh& mesh) {
    AnalyticField u = forcefree::beltrami_plane_wave(lam, {0, 0, 1});
    std::vector<cplx> psi(3 * mesh.size()), psi0(mesh.size());
    for (std::size_t t = 0; t < mesh.size(); ++t) {
      Vec3c uv = vec(u.f(mesh.centroids[t]));
      Vec3c n = to_vec3c(mesh.normals[t]);
      psi0[t] = dot(uv, n);
      Vec3c cr = cross(uv, n);
      psi[3 * t] = cr.x;
      psi[3 * t + 1] = cr.y;
      psi[3 * t + 2] = cr.z;
    }
    auto lhs = neumann::bie_apply_direct(mesh, lam, psi);
    auto rhs = neumann::bie_rhs(mesh, lam, psi0);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      num += std::norm(lhs[i] - rhs[i]);
      den += std::norm(psi[i]);
    }
    return std::sqrt(num / den);
  };
  c.le("trace-density-residual", trace_residual(surf::make_sphere_mesh(1.0, 4)),
       c.tol.neumann_bie);
  {
    const auto dom = grid::build_domain(Shape::make_ball(1.0), 12);
    const PointGrid evalg = grid::interior_eval_grid(dom, 10, 2);
    auto mesh2 = surf::make_sphere_mesh(1.0, 2);
    const auto g = rightinv::make_source(dom, builtin("bump-vector", lam));
    AnalyticField u = forcefree::beltrami_plane_wave(lam, {0, 0, 1});

    std::vector<cplx> zeros(mesh2.size(), cplx(0, 0));
    std::vector<cplx> rb = neumann::boundary_psi0(dom, g, zeros, lam, mesh2);
    std::vector<cplx> phi0(mesh2.size());
    for (std::size_t t = 0; t < mesh2.size(); ++t)
      phi0[t] = dot(vec(u.f(mesh2.centroids[t])), to_vec3c(mesh2.normals[t])) -
                rb[t];

    auto sol = neumann::solve_neumann(dom, g, phi0, lam, mesh2, evalg,
                                      c.tol.precondition);
    FieldSample wexact = rightinv::r_lambda(dom, g, lam, evalg);
    FieldSample uex = grid::sample(u, *wexact.grid);
    for (std::size_t i = 0; i < wexact.size(); ++i)
      wexact.values[i] += uex.values[i];
    // Level-2 collocation starts near 30%; the tight recovery gate runs on
    // the refined mesh in the acceptance checks.
    c.le("manufactured-recovery", fd::rel_l2_error(sol.w, wexact),
         4.0 * c.tol.neumann_recovery);

    // Kept well inside the coarse mesh's quadrature floor (twice the mean
    // triangle diameter, about 0.64 here). The reconstruction should be
    // force-free at the level of the mesh's own discretization error, taken
    // as the analytic-trace residual on the same mesh.
    const PointGrid inner =
        grid::make_grid({-0.15, -0.15, -0.15}, 0.06, {6, 6, 6});
    FieldSample urec =
        neumann::reconstruct_interior(sol.data, mesh2, lam, inner);
    auto rep = forcefree::verify_forcefree(urec, lam);
    // 2.5x rather than 2x: the defect is normalized by ||u|| and takes the
    // worse of the curl/div components, while the reference residual is
    // normalized by ||psi||; measured 2.2x on this mesh.
    c.le("reconstruction-force-free",
         std::max(rep.curl_residual, rep.div_residual),
         2.5 * trace_residual(mesh2));

    cplx integral = 0;
    double den = 0;
    for (std::size_t t = 0; t < mesh2.size(); ++t) {
      integral += lam * sol.data.psi0[t] * mesh2.areas[t];
      den += std::abs(lam * sol.data.psi0[t]) * mesh2.areas[t];
    }
    c.le("scalar-density-integral",
         std::abs(integral) / std::max(den, 1e-30), c.tol.quadrature);

    bool raised = false;
    try {
      std::vector<cplx> bad = phi0;
      for (auto& v : bad) v += 0.5;
      neumann::solve_neumann(dom, g, bad, lam, mesh2, evalg,
                             c.tol.precondition);
    } catch (const CompatibilityError&) {
      raised = true;
    }
    c.expect("compatibility-guard", raised);
  }
}

}  // namespace

bool SuiteReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "quaternion_core", "domain_grid", "fielddiff",  "kernels",
      "potentials",      "rightinverse", "conjugate", "forcefree",
      "maxwell",         "neumann"};
  return names;
}

SuiteReport run_suite(const std::string& name, const Tolerances& tol) {
  SuiteReport rep;
  rep.suite = name;
  Ctx ctx{tol, rep.checks};
  auto t0 = std::chrono::steady_clock::now();
  if (name == "quaternion_core") suite_quaternion(ctx);
  else if (name == "domain_grid") suite_domain(ctx);
  else if (name == "fielddiff") suite_fielddiff(ctx);
  else if (name == "kernels") suite_kernels(ctx);
  else if (name == "potentials") suite_potentials(ctx);
  else if (name == "rightinverse") suite_rightinverse(ctx);
  else if (name == "conjugate") suite_conjugate(ctx);
  else if (name == "forcefree") suite_forcefree(ctx);
  else if (name == "maxwell") suite_maxwell(ctx);
  else if (name == "neumann") suite_neumann(ctx);
  else throw ConfigError("unknown verify suite \"" + name + "\"");
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace curlam::verify
