#include <doctest.h>

#include <cmath>

#include "curlam/builtin_fields.hpp"
#include "curlam/domain.hpp"
#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"
#include "curlam/force_free.hpp"
#include "curlam/right_inverse.hpp"

using namespace curlam;
namespace ri = curlam::rightinv;

namespace {

VoxelDomain ball(int n) { return grid::build_domain(Shape::make_ball(1.0), n); }

}  // namespace

TEST_SUITE("right_inverse") {

TEST_CASE("make_source samples the cells and exposes the evaluator") {
  auto dom = ball(10);
  AnalyticField f = builtins::make("gaussian-vector", nullptr, 2.0);
  ri::SourceField g = ri::make_source(dom, f);
  REQUIRE(g.cells.size() == dom.size());
  for (std::size_t k = 0; k < dom.size(); k += 11) {
    CHECK(quat::norm(g.cells.values[k] - f.f(dom.centers[k])) == 0);
    CHECK(quat::norm(g.at(dom.centers[k]) - f.f(dom.centers[k])) == 0);
  }
}

TEST_CASE("interpolated source: exact at centers, averaged between, zero outside") {
  auto dom = ball(8);
  AnalyticField f{FieldKind::vector, [](Pt p) {
                    return embed(cplx(0, 0), {cplx(p.x, 0), cplx(p.y, 0), cplx(p.z, 0)});
                  }};
  FieldSample cells = grid::sample(f, dom.centers);
  ri::SourceField g = ri::make_source_interpolated(dom, cells);

  const std::size_t k = dom.size() / 2;
  CHECK(quat::norm(g.at(dom.centers[k]) - cells.values[k]) == 0);

  // Trilinear interpolation reproduces affine fields between interior centers.
  Pt mid = dom.centers[k] + Pt{0.5 * dom.h, 0, 0};
  if (dom.containing_cell(mid) >= 0 && dom.shape.boundary_distance(mid) > 2 * dom.h)
    CHECK(quat::norm(g.at(mid) - f.f(mid)) <= 1e-12);

  CHECK(quat::norm(g.at({5, 5, 5})) == 0);
}

TEST_CASE("divergence relation holds to rounding at any resolution") {
  // div R[g] = div g / lambda is a lattice identity (the FD divergence of an
  // FD curl cancels exactly), so it is sharp even on a coarse grid.
  auto dom = ball(12);
  const cplx lam(2.0, 0.0);
  ri::SourceField g = ri::make_source(dom, builtins::make("gaussian-vector", nullptr, lam));
  // Dense enough that two FD erosions (the curl inside R, then the outer
  // divergence) still leave a nonempty common lattice.
  PointGrid eval = grid::interior_eval_grid(dom, 14, 2);
  REQUIRE(eval.size() > 0);

  FieldSample w = ri::r_lambda(dom, g, lam, eval);
  FieldSample div_w = fd::divergence(w);

  FieldSample g_on = grid::sample({FieldKind::vector, g.at}, eval);
  FieldSample div_g = fd::divergence(g_on);
  for (Biquaternion& v : div_g.values) v = (1.0 / lam) * v;

  CHECK(fd::rel_l2_error(div_w, div_g) <= 1e-12);
}

TEST_CASE("compatibility scalar of a divergence-free field is zero") {
  auto dom = ball(10);
  const cplx lam(1.5, 0.5);
  AnalyticField rot{FieldKind::vector, [](Pt p) {
                      return embed(cplx(0, 0), {cplx(p.y, 0), cplx(p.z, 0), cplx(p.x, 0)});
                    }};
  PointGrid eval = grid::interior_eval_grid(dom, 8, 1);
  FieldSample s = grid::sample(rot, eval);
  FieldSample g0 = ri::compatibility_scalar(s, lam);
  double num = 0;
  for (const Biquaternion& v : g0.values) num += std::norm(sc(v));
  CHECK(std::sqrt(num) <= 1e-12);
}

TEST_CASE("compatibility scalar of an affine field is -div/lambda") {
  auto dom = ball(10);
  const cplx lam(2.0, 0.0);
  AnalyticField f{FieldKind::vector, [](Pt p) {
                    return embed(cplx(0, 0), {cplx(3 * p.x, 0), cplx(0, 0), cplx(-p.z, 0)});
                  }};
  PointGrid eval = grid::interior_eval_grid(dom, 8, 1);
  FieldSample g0 = ri::compatibility_scalar(grid::sample(f, eval), lam);
  REQUIRE(g0.size() > 0);
  for (const Biquaternion& v : g0.values)
    CHECK(std::abs(sc(v) - cplx(-1.0, 0)) <= 1e-12);  // -(3 - 1)/2
}

TEST_CASE("homogeneous term shifts the solution without touching the residual") {
  auto dom = ball(12);
  const cplx lam(2.0, 0.0);
  ri::SourceField g = ri::make_source(dom, builtins::make("bump-vector", nullptr, lam));
  // Fine enough that the FD force-free screening of u clears its tolerance.
  PointGrid eval = grid::interior_eval_grid(dom, 14, 2);

  AnalyticField u = forcefree::beltrami_shear(lam, 2, 0.4);
  FieldSample plain = ri::r_lambda(dom, g, lam, eval);
  FieldSample shifted = ri::general_solution(dom, g, lam, eval, u, 0.05);
  REQUIRE(plain.size() == shifted.size());

  // The difference is exactly the sampled homogeneous term.
  FieldSample us = grid::sample(u, *plain.grid);
  double num = 0, den = 0;
  for (std::size_t k = 0; k < plain.size(); ++k) {
    Biquaternion d = shifted.values[k] - plain.values[k] - us.values[k];
    num += quat::norm(d) * quat::norm(d);
    den += quat::norm(us.values[k]) * quat::norm(us.values[k]);
  }
  CHECK(std::sqrt(num) / std::sqrt(den) <= 1e-12);
}

TEST_CASE("general_solution rejects a non-force-free homogeneous term") {
  auto dom = ball(10);
  const cplx lam(2.0, 0.0);
  ri::SourceField g = ri::make_source(dom, builtins::make("gaussian-vector", nullptr, lam));
  PointGrid eval = grid::interior_eval_grid(dom, 12, 2);
  AnalyticField bad{FieldKind::vector, [](Pt p) {
                      return embed(cplx(0, 0), {cplx(p.z * p.z, 0), 0, 0});
                    }};
  CHECK_THROWS_AS(ri::general_solution(dom, g, lam, eval, bad, 0.05), PreconditionError);
}

TEST_CASE("lambda = 0 is refused") {
  auto dom = ball(8);
  ri::SourceField g = ri::make_source(dom, builtins::make("gaussian-vector", nullptr, 0.0));
  PointGrid eval = grid::interior_eval_grid(dom, 8, 1);
  CHECK_THROWS_AS(ri::r_lambda(dom, g, 0.0, eval), PreconditionError);
}

TEST_CASE("an eval lattice erased by erosion is refused") {
  auto dom = ball(8);
  const cplx lam(2.0, 0.0);
  ri::SourceField g = ri::make_source(dom, builtins::make("gaussian-vector", nullptr, lam));
  // Two interior points: the curl erosion leaves nothing.
  PointGrid tiny = grid::make_grid({-0.05, 0, 0}, 0.1, {2, 1, 1});
  CHECK_THROWS_AS(ri::r_lambda(dom, g, lam, tiny), PreconditionError);
}

TEST_CASE("gauge_solve with a constant gauge reduces to the plain solve") {
  // phi identically zero multiplies by e^0 = 1 on both sides, so the gauged
  // pipeline must reproduce r_lambda exactly.
  auto dom = ball(10);
  const cplx lam(2.0, 0.0);
  ri::SourceField h = ri::make_source(dom, builtins::make("gaussian-vector", nullptr, lam));
  PointGrid eval = grid::interior_eval_grid(dom, 12, 2);
  REQUIRE(eval.size() > 0);
  FieldSample v = ri::gauge_solve(dom, h, [](Pt) { return cplx(0, 0); }, lam, eval);
  FieldSample w = ri::r_lambda(dom, h, lam, eval);
  REQUIRE(v.size() == w.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    CHECK(quat::norm(v.values[k] - w.values[k]) == 0);
}

}  // TEST_SUITE
