#include <doctest.h>

#include <cmath>
#include <set>

#include "curlam/domain.hpp"
#include "curlam/errors.hpp"

using namespace curlam;
namespace grd = curlam::grid;

TEST_SUITE("domain") {

TEST_CASE("box voxelization is exact") {
  // The box is its own bounding box, so every cell center is inside and the
  // quadrature volume is exact.
  auto dom = grd::build_domain(Shape::make_box({-1, -1, -1}, {1, 1, 1}), 16);
  CHECK(dom.size() == 16 * 16 * 16);
  CHECK(dom.h == doctest::Approx(2.0 / 16).epsilon(1e-15));
  double vol = 0;
  for (double w : dom.weights) vol += w;
  CHECK(vol == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("ball volume converges to 4 pi / 3") {
  auto dom = grd::build_domain(Shape::make_ball(1.0), 32);
  double vol = 0;
  for (double w : dom.weights) vol += w;
  const double exact = 4.0 * M_PI / 3.0;
  CHECK(std::abs(vol - exact) / exact <= 0.01);
}

TEST_CASE("ellipsoid volume within 2 percent at n = 32") {
  auto dom = grd::build_domain(Shape::make_ellipsoid({1.0, 0.8, 0.6}), 32);
  double vol = 0;
  for (double w : dom.weights) vol += w;
  const double exact = 4.0 * M_PI / 3.0 * 0.48;
  CHECK(std::abs(vol - exact) / exact <= 0.02);
}

TEST_CASE("cell centers lie inside, weights are h^3") {
  auto dom = grd::build_domain(Shape::make_ball(1.0), 12);
  const double h3 = dom.h * dom.h * dom.h;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    CHECK(dom.shape.inside(dom.centers[k]));
    CHECK(dom.weights[k] == h3);
  }
}

TEST_CASE("containing_cell inverts the center positions") {
  auto dom = grd::build_domain(Shape::make_ball(1.0), 10);
  for (std::size_t k = 0; k < dom.size(); k += 7)
    CHECK(dom.containing_cell(dom.centers[k]) == static_cast<int>(k));
  // A point well outside the ball has no cell.
  CHECK(dom.containing_cell({2.0, 0, 0}) == -1);
}

TEST_CASE("boundary_distance: exact for the ball, conservative inside") {
  auto ball = Shape::make_ball(1.0);
  CHECK(ball.boundary_distance({0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ball.boundary_distance({0.25, 0, 0}) == doctest::Approx(0.75).epsilon(1e-15));
  auto box = Shape::make_box({0, 0, 0}, {2, 1, 1});
  CHECK(box.boundary_distance({1.0, 0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));
  auto ell = Shape::make_ellipsoid({1.0, 0.5, 0.5});
  // Conservative: never larger than the true distance (here along y).
  CHECK(ell.boundary_distance({0, 0, 0}) <= 0.5 + 1e-12);
  CHECK(ell.boundary_distance({0, 0, 0}) > 0);
}

TEST_CASE("interior_eval_grid keeps the documented clearance") {
  auto dom = grd::build_domain(Shape::make_ball(1.0), 16);
  const int margin = 2;
  PointGrid g = grd::interior_eval_grid(dom, 12, margin);
  CHECK(g.size() > 0);
  const double clearance = (margin + 1) * g.meta.h;
  for (Pt p : g.points)
    CHECK(dom.shape.boundary_distance(p) >= clearance - 1e-12);
}

TEST_CASE("interior_eval_grid rejects degenerate requests") {
  auto dom = grd::build_domain(Shape::make_ball(1.0), 16);
  CHECK_THROWS_AS(grd::interior_eval_grid(dom, 10, 0), ConfigError);
  auto box = grd::build_domain(Shape::make_box({-1, -1, -1}, {1, 1, 1}), 8);
  // Four nodes per axis cannot clear a two-cell margin on both sides.
  CHECK_THROWS_AS(grd::interior_eval_grid(box, 4, 2), PreconditionError);
}

TEST_CASE("eval lattice indexing round-trips") {
  auto dom = grd::build_domain(Shape::make_ball(1.0), 16);
  PointGrid g = grd::interior_eval_grid(dom, 10, 1);
  for (std::size_t r = 0; r < g.size(); ++r) {
    auto [i, j, k] = g.ijk[r];
    CHECK(g.row(i, j, k) == static_cast<int>(r));
    // Point position reconstructs from the lattice coordinates.
    CHECK(g.points[r].x == doctest::Approx(g.meta.origin.x + i * g.meta.h).epsilon(1e-14));
    CHECK(g.points[r].y == doctest::Approx(g.meta.origin.y + j * g.meta.h).epsilon(1e-14));
    CHECK(g.points[r].z == doctest::Approx(g.meta.origin.z + k * g.meta.h).epsilon(1e-14));
  }
  CHECK(g.row(-1, 0, 0) == -1);
  CHECK(g.row(g.meta.dims[0], 0, 0) == -1);
}

TEST_CASE("make_grid builds the full lattice") {
  PointGrid g = grd::make_grid({0.5, -0.5, 0.0}, 0.25, {3, 4, 5});
  CHECK(g.size() == 3u * 4u * 5u);
  CHECK(g.points[0].x == 0.5);
  CHECK(g.points[0].y == -0.5);
  // Deterministic x-fastest ordering.
  CHECK(g.points[1].x == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(g.row(2, 3, 4) == static_cast<int>(g.size()) - 1);
}

TEST_CASE("sample tags the lattice and evaluates pointwise") {
  AnalyticField f{FieldKind::scalar,
                  [](Pt p) { return embed(cplx(p.x + 2 * p.y - p.z, 0), {}); }};
  PointGrid g = grd::make_grid({0, 0, 0}, 0.5, {3, 3, 3});
  FieldSample s = grid::sample(f, g);
  CHECK(s.kind == FieldKind::scalar);
  CHECK(bool(s.grid));
  CHECK(s.size() == g.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    Pt p = s.points[r];
    CHECK(sc(s.values[r]).real() == doctest::Approx(p.x + 2 * p.y - p.z).epsilon(1e-15));
  }
}

TEST_CASE("norm2 is the root of summed squared moduli") {
  FieldSample s;
  s.kind = FieldKind::full;
  s.points = {{0, 0, 0}, {1, 0, 0}};
  s.values = {{cplx(3, 4), 0, 0, 0}, {0, cplx(0, 2), 0, 0}};
  CHECK(s.norm2() == doctest::Approx(std::sqrt(25.0 + 4.0)).epsilon(1e-15));
}

TEST_CASE("deterministic center ordering") {
  // Two identical builds produce identical center sequences.
  auto a = grd::build_domain(Shape::make_ball(1.0), 14);
  auto b = grd::build_domain(Shape::make_ball(1.0), 14);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.centers[k].x == b.centers[k].x);
    CHECK(a.centers[k].y == b.centers[k].y);
    CHECK(a.centers[k].z == b.centers[k].z);
  }
}

}  // TEST_SUITE
