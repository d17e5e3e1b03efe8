#include <doctest.h>

#include <cmath>

#include "curlam/errors.hpp"
#include "curlam/kernels.hpp"

using namespace curlam;
namespace ker = curlam::kernels;

TEST_SUITE("kernels") {

TEST_CASE("theta at lambda = 0 is the Newtonian kernel") {
  // -1/(4 pi r) at r = 0.5.
  cplx th = ker::theta({0.5, 0, 0}, 0.0);
  CHECK(th.real() == doctest::Approx(-0.15915494309189535).epsilon(1e-14));
  CHECK(th.imag() == 0.0);
}

TEST_CASE("theta at lambda = 2, r = 0.5 matches the frozen closed form") {
  // -exp(i)/(2 pi), evaluated independently.
  cplx th = ker::theta({0, 0.5, 0}, 2.0);
  CHECK(th.real() == doctest::Approx(-0.08599178274286362).epsilon(1e-13));
  CHECK(th.imag() == doctest::Approx(-0.13392426670058188).epsilon(1e-13));
}

TEST_CASE("theta depends on |x| only") {
  cplx lam(1.2, 0.3);
  cplx a = ker::theta({0.3, 0.4, 0.0}, lam);   // r = 0.5
  cplx b = ker::theta({0.0, 0.0, 0.5}, lam);
  CHECK(std::abs(a - b) <= 1e-15);
}

TEST_CASE("theta throws at the singular point") {
  CHECK_THROWS_AS(ker::theta({0, 0, 0}, 1.0), SingularPointError);
  CHECK_THROWS_AS(ker::grad_theta({0, 0, 0}, 1.0), SingularPointError);
}

TEST_CASE("grad_theta matches central differences of theta") {
  const cplx lam(2.0, 0.5);
  const Pt x{0.35, -0.2, 0.45};
  const double h = 1e-5;
  Vec3c g = ker::grad_theta(x, lam);

  const Pt ax[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
  cplx fd[3];
  for (int a = 0; a < 3; ++a)
    fd[a] = (ker::theta(x + ax[a], lam) - ker::theta(x - ax[a], lam)) / (2.0 * h);
  CHECK(std::abs(g.x - fd[0]) <= 1e-7);
  CHECK(std::abs(g.y - fd[1]) <= 1e-7);
  CHECK(std::abs(g.z - fd[2]) <= 1e-7);
}

TEST_CASE("grad_theta is odd in x") {
  const cplx lam(1.0, 0.25);
  const Pt x{0.2, 0.1, -0.3};
  Vec3c gp = ker::grad_theta(x, lam);
  Vec3c gm = ker::grad_theta({-x.x, -x.y, -x.z}, lam);
  CHECK(std::sqrt(norm2sq(gp + gm)) <= 1e-15);
}

TEST_CASE("theta satisfies Helmholtz pointwise away from the origin") {
  // (Delta + lambda^2) theta = 0 off the singularity, by a 7-point stencil.
  const cplx lam(1.5, 0.0);
  const Pt x{0.4, 0.3, 0.2};
  const double h = 1e-3;
  cplx lap = -6.0 * ker::theta(x, lam);
  const Pt ax[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
  for (int a = 0; a < 3; ++a)
    lap += ker::theta(x + ax[a], lam) + ker::theta(x - ax[a], lam);
  lap /= h * h;
  cplx resid = lap + lam * lam * ker::theta(x, lam);
  CHECK(std::abs(resid) / std::abs(lam * lam * ker::theta(x, lam)) <= 1e-4);
}

TEST_CASE("theta_pair equals the separate evaluations") {
  const cplx lam(0.8, 0.6);
  const Pt x{-0.25, 0.45, 0.15};
  cplx th;
  Vec3c gth;
  ker::theta_pair(x, lam, th, gth);
  CHECK(th == ker::theta(x, lam));
  Vec3c g = ker::grad_theta(x, lam);
  CHECK(gth.x == g.x);
  CHECK(gth.y == g.y);
  CHECK(gth.z == g.z);
}

TEST_CASE("fundamental_E: sign pair sums and differences") {
  // E_{+} + E_{-} = -2 grad theta (vector), E_{+} - E_{-} = 2 lambda theta
  // (scalar); both hold exactly because the pieces are shared.
  const cplx lam(1.1, 0.4);
  const Pt x{0.3, -0.4, 0.2};
  Biquaternion ep = ker::fundamental_E(x, lam, +1);
  Biquaternion em = ker::fundamental_E(x, lam, -1);
  Biquaternion sum = ep + em;
  Biquaternion dif = ep - em;
  Vec3c g = ker::grad_theta(x, lam);
  cplx th = ker::theta(x, lam);
  CHECK(std::abs(sc(sum)) == 0);
  CHECK(std::sqrt(norm2sq(vec(sum) + 2.0 * g)) == 0);
  CHECK(std::abs(sc(dif) - 2.0 * lam * th) <= 1e-16);
  CHECK(std::sqrt(norm2sq(vec(dif))) == 0);
}

TEST_CASE("selfcell_theta: static limit is -r^2/2") {
  CHECK(ker::selfcell_theta(0.3, 0.0) == cplx(-0.045, 0.0));
  CHECK(ker::selfcell_theta(1.0, 0.0) == cplx(-0.5, 0.0));
}

TEST_CASE("selfcell_theta matches the frozen independent quadrature") {
  // Radial midpoint rule with 2e5 nodes, r = 0.3, lambda = 1.5 + 0.4i,
  // agreed with the closed form to 8e-14.
  cplx v = ker::selfcell_theta(0.3, cplx(1.5, 0.4));
  CHECK(v.real() == doctest::Approx(-0.039509958362761284).epsilon(1e-10));
  CHECK(v.imag() == doctest::Approx(-0.012095802988196607).epsilon(1e-10));
}

TEST_CASE("selfcell_theta is continuous across the series branch") {
  // The small-argument series and the closed form must agree where they meet;
  // scan |lambda| r through the switch region.
  const double r = 0.05;
  for (double lr : {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.5}) {
    cplx lam(lr / r, 0.3 * lr / r);
    cplx a = ker::selfcell_theta(r, lam);
    cplx nudged = ker::selfcell_theta(r, lam * (1.0 + 1e-9));
    CHECK(std::abs(a - nudged) / std::abs(a) <= 1e-7);
  }
}

TEST_CASE("selfcell_gradtheta vanishes by symmetry") {
  Vec3c z = ker::selfcell_gradtheta(0.25, cplx(2.0, 0.7));
  CHECK(norm2sq(z) == 0);
}

TEST_CASE("equivalent_radius reproduces the cell volume") {
  double r = ker::equivalent_radius(0.1);
  CHECK(r == doctest::Approx(0.062035049089940016).epsilon(1e-15));
  // 4/3 pi r^3 = h^3.
  CHECK(4.0 / 3.0 * M_PI * r * r * r == doctest::Approx(1e-3).epsilon(1e-14));
}

}  // TEST_SUITE
