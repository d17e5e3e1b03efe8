#include <doctest.h>

#include <cmath>

#include "curlam/builtin_fields.hpp"
#include "curlam/conjugate.hpp"
#include "curlam/domain.hpp"
#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"

using namespace curlam;
namespace cj = curlam::conjugate;

namespace {

// Cube lattice centered at the origin, spacing h = 1/16.
PointGrid lattice(int n = 17, double h = 1.0 / 16) {
  double half = 0.5 * h * (n - 1);
  return grid::make_grid({-half, -half, -half}, h, {n, n, n});
}

}  // namespace

TEST_SUITE("conjugate") {

TEST_CASE("plane wave is a Helmholtz solution at FD accuracy") {
  const cplx lam(2.0, 0.0);
  FieldSample w0 = grid::sample(builtins::make("plane-wave-scalar", nullptr, lam), lattice());
  CHECK(cj::helmholtz_residual(w0, lam) <= 0.01);
}

TEST_CASE("from_scalar recovers the analytic conjugate of the plane wave") {
  // For w0 = exp(i lambda z) the vector partner is -grad(w0)/lambda =
  // -i exp(i lambda z) e3.
  const cplx lam(2.0, 0.0);
  FieldSample w0 = grid::sample(builtins::make("plane-wave-scalar", nullptr, lam), lattice());
  FieldSample wv = cj::from_scalar(w0, lam, 0.05);
  CHECK(wv.kind == FieldKind::vector);

  AnalyticField ref{FieldKind::vector, [lam](Pt p) {
                      cplx e = std::exp(cplx(0, 1) * lam * cplx(p.z, 0));
                      return embed(cplx(0, 0), {0, 0, cplx(0, -1) * e});
                    }};
  FieldSample r = grid::sample(ref, *wv.grid);
  CHECK(fd::rel_l2_error(wv, r) <= 0.01);
}

TEST_CASE("round trip from_vector(from_scalar) returns the scalar at h^2 accuracy") {
  const cplx lam(2.0, 0.0);
  FieldSample w0 = grid::sample(builtins::make("plane-wave-scalar", nullptr, lam), lattice());
  FieldSample wv = cj::from_scalar(w0, lam, 0.05);
  FieldSample back = cj::from_vector(wv, lam, 0.05);
  CHECK(back.kind == FieldKind::scalar);
  CHECK(fd::rel_l2_error(back, w0) <= 0.01);
}

TEST_CASE("the completed pair is annihilated by the perturbed operator") {
  // w = (1 - i e3) exp(i lambda z) pairs the scalar with its conjugate;
  // (D + lambda) w = 0 up to the stencil error.
  const cplx lam(2.0, 0.0);
  AnalyticField pair{FieldKind::full, [lam](Pt p) {
                       cplx e = std::exp(cplx(0, 1) * lam * cplx(p.z, 0));
                       return embed(e, {0, 0, cplx(0, -1) * e});
                     }};
  FieldSample w = grid::sample(pair, lattice());
  FieldSample dw = fd::dirac(w);
  REQUIRE(dw.size() > 0);

  FieldSample target = w;  // -lambda w, compared over the eroded lattice
  for (Biquaternion& v : target.values) v = -lam * v;
  CHECK(fd::rel_l2_error(dw, target) <= 0.02);
}

TEST_CASE("from_scalar rejects a non-metaharmonic input") {
  const cplx lam(2.0, 0.0);
  AnalyticField bad{FieldKind::scalar,
                    [](Pt p) { return embed(cplx(p.x * p.x, 0), {}); }};
  FieldSample w0 = grid::sample(bad, lattice());
  CHECK_THROWS_AS(cj::from_scalar(w0, lam, 0.05), PreconditionError);
}

TEST_CASE("from_vector rejects a field without a scalar partner") {
  const cplx lam(2.0, 0.0);
  AnalyticField bad{FieldKind::vector, [](Pt p) {
                      return embed(cplx(0, 0), {cplx(p.y * p.y, 0), 0, 0});
                    }};
  FieldSample wv = grid::sample(bad, lattice());
  CHECK_THROWS_AS(cj::from_vector(wv, lam, 0.05), PreconditionError);
}

TEST_CASE("enforce = false skips the precondition checks") {
  const cplx lam(2.0, 0.0);
  AnalyticField bad{FieldKind::scalar,
                    [](Pt p) { return embed(cplx(p.x * p.x, 0), {}); }};
  FieldSample w0 = grid::sample(bad, lattice(9));
  CHECK_NOTHROW(cj::from_scalar(w0, lam, 0.05, false));
}

TEST_CASE("residual helpers are scale-invariant") {
  const cplx lam(2.0, 0.0);
  FieldSample w0 = grid::sample(builtins::make("plane-wave-scalar", nullptr, lam), lattice(13));
  double r1 = cj::helmholtz_residual(w0, lam);
  for (Biquaternion& v : w0.values) v = 7.5 * v;
  double r2 = cj::helmholtz_residual(w0, lam);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

}  // TEST_SUITE
