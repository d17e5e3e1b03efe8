#include <doctest.h>

#include <cmath>

#include "curlam/domain.hpp"
#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"

using namespace curlam;

namespace {

PointGrid cube_grid(int n, double h, Pt origin = {0, 0, 0}) {
  return grid::make_grid(origin, h, {n, n, n});
}

// Smooth full-width test field with all four components populated.
AnalyticField trig_field() {
  return {FieldKind::full, [](Pt p) {
            cplx s(std::sin(p.x + 2 * p.y), std::cos(p.z));
            Vec3c v{cplx(std::sin(p.y + p.z), 0.1 * p.x),
                    cplx(std::cos(p.x - p.z), 0),
                    cplx(std::sin(0.5 * p.x + p.y), -0.2 * p.z)};
            return embed(s, v);
          }};
}

}  // namespace

TEST_SUITE("fd_ops") {

TEST_CASE("erode strips one stencil layer per step") {
  PointGrid g = cube_grid(5, 0.1);
  PointGrid e1 = fd::erode(g, 1);
  CHECK(e1.size() == 27);  // 3^3 inner nodes
  PointGrid e2 = fd::erode(e1, 1);
  CHECK(e2.size() == 1);
  // Step 2 needs neighbors two slots away.
  PointGrid w = fd::erode(g, 2);
  CHECK(w.size() == 1);
}

TEST_CASE("gradient is exact on affine scalars") {
  AnalyticField f{FieldKind::scalar, [](Pt p) {
                    return embed(cplx(2 * p.x - 3 * p.y + 0.5 * p.z + 1, 0), {});
                  }};
  FieldSample s = grid::sample(f, cube_grid(6, 0.2));
  FieldSample g = fd::gradient(s);
  CHECK(g.kind == FieldKind::vector);
  CHECK(g.size() == 4u * 4u * 4u);
  for (const Biquaternion& v : g.values) {
    CHECK(std::abs(vec(v).x - cplx(2, 0)) <= 1e-13);
    CHECK(std::abs(vec(v).y - cplx(-3, 0)) <= 1e-13);
    CHECK(std::abs(vec(v).z - cplx(0.5, 0)) <= 1e-13);
  }
}

TEST_CASE("curl of a gradient vanishes to rounding") {
  FieldSample s = grid::sample(trig_field(), cube_grid(9, 0.11));
  FieldSample g = fd::gradient(s);
  FieldSample cg = fd::curl(g);
  CHECK(cg.size() > 0);
  double rel = 0;
  double den = g.norm2();
  for (const Biquaternion& v : cg.values) rel += norm2sq(vec(v));
  CHECK(std::sqrt(rel) / den <= 1e-12);
}

TEST_CASE("divergence of a curl vanishes to rounding") {
  FieldSample s = grid::sample(trig_field(), cube_grid(9, 0.13));
  FieldSample c = fd::curl(s);
  FieldSample dc = fd::divergence(c);
  CHECK(dc.size() > 0);
  double num = 0;
  for (const Biquaternion& v : dc.values) num += std::norm(sc(v));
  CHECK(std::sqrt(num) / c.norm2() <= 1e-12);
}

TEST_CASE("dirac squared equals minus the composed laplacian") {
  FieldSample s = grid::sample(trig_field(), cube_grid(9, 0.12));
  FieldSample dd = fd::dirac(fd::dirac(s));
  FieldSample lap = fd::laplacian(s, fd::LaplacianStencil::Composed);
  for (Biquaternion& v : lap.values) v = -v;
  CHECK(fd::rel_l2_error(dd, lap) <= 1e-12);
}

TEST_CASE("compact laplacian error on sin(2z) sits at the h^2/12 level") {
  // Frozen truncation estimate: (kh)^2/12 = 8.33e-4 at k = 2, h = 0.05.
  AnalyticField f{FieldKind::scalar,
                  [](Pt p) { return embed(cplx(std::sin(2 * p.z), 0), {}); }};
  FieldSample s = grid::sample(f, cube_grid(12, 0.05));
  FieldSample lap = fd::laplacian(s, fd::LaplacianStencil::Compact);
  AnalyticField ref{FieldKind::scalar,
                    [](Pt p) { return embed(cplx(-4 * std::sin(2 * p.z), 0), {}); }};
  FieldSample r = grid::sample(ref, *lap.grid);
  double rel = fd::rel_l2_error(lap, r);
  CHECK(rel <= 2e-3);
  CHECK(rel >= 1e-5);  // genuinely h^2, not accidentally exact
}

TEST_CASE("composed laplacian carries the 2h-stencil constant") {
  // Same field: the chained first differences quadruple the h^2 error term.
  AnalyticField f{FieldKind::scalar,
                  [](Pt p) { return embed(cplx(std::sin(2 * p.z), 0), {}); }};
  FieldSample s = grid::sample(f, cube_grid(12, 0.05));
  AnalyticField ref{FieldKind::scalar,
                    [](Pt p) { return embed(cplx(-4 * std::sin(2 * p.z), 0), {}); }};
  FieldSample lc = fd::laplacian(s, fd::LaplacianStencil::Compact);
  FieldSample lm = fd::laplacian(s, fd::LaplacianStencil::Composed);
  double ec = fd::rel_l2_error(lc, grid::sample(ref, *lc.grid));
  double em = fd::rel_l2_error(lm, grid::sample(ref, *lm.grid));
  CHECK(em / ec == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("gradient refinement ratio is second order") {
  AnalyticField f{FieldKind::scalar,
                  [](Pt p) { return embed(cplx(std::sin(2 * p.x) * std::cos(p.y), 0), {}); }};
  auto err = [&](double h, int n) {
    FieldSample s = grid::sample(f, cube_grid(n, h));
    FieldSample g = fd::gradient(s);
    AnalyticField ref{FieldKind::vector, [](Pt p) {
                        return embed(cplx(0, 0),
                                     {cplx(2 * std::cos(2 * p.x) * std::cos(p.y), 0),
                                      cplx(-std::sin(2 * p.x) * std::sin(p.y), 0), 0});
                      }};
    return fd::rel_l2_error(g, grid::sample(ref, *g.grid));
  };
  double e1 = err(0.1, 9);
  double e2 = err(0.05, 17);  // same physical box, halved spacing
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("dirac splits into -div + grad + curl") {
  FieldSample s = grid::sample(trig_field(), cube_grid(7, 0.15));
  FieldSample d = fd::dirac(s);
  FieldSample dv = fd::divergence(s);
  FieldSample gr = fd::gradient(s);
  FieldSample cu = fd::curl(s);
  REQUIRE(d.size() == dv.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    Biquaternion expect = embed(-sc(dv.values[k]), vec(gr.values[k]) + vec(cu.values[k]));
    CHECK(quat::norm(d.values[k] - expect) <= 1e-14);
  }
}

TEST_CASE("rel_l2_error aligns samples over common lattice points") {
  PointGrid g = cube_grid(6, 0.2);
  AnalyticField f{FieldKind::scalar, [](Pt p) { return embed(cplx(p.x + p.y, 0), {}); }};
  FieldSample a = grid::sample(f, g);
  FieldSample b = grid::sample(f, fd::erode(g, 1));
  // Same field on nested lattices: zero over the intersection.
  CHECK(fd::rel_l2_error(a, b) == 0);
  CHECK(fd::rel_l2_error(b, a) == 0);
}

TEST_CASE("rel_l2_error refuses disjoint samples") {
  AnalyticField f{FieldKind::scalar, [](Pt p) { return embed(cplx(p.x, 0), {}); }};
  FieldSample a = grid::sample(f, cube_grid(3, 0.1, {0, 0, 0}));
  FieldSample b = grid::sample(f, cube_grid(3, 0.1, {10, 10, 10}));
  CHECK_THROWS_AS(fd::rel_l2_error(a, b), PreconditionError);
}

TEST_CASE("linf helpers") {
  FieldSample a, b;
  a.points = b.points = {{0, 0, 0}};
  a.values = {{cplx(1, 0), cplx(0, 2), 0, 0}};
  b.values = {{cplx(1, 0), cplx(0, -1), 0, 0}};
  CHECK(fd::linf_norm(a) == 2.0);
  CHECK(fd::linf_error(a, b) == 3.0);
}

}  // TEST_SUITE
