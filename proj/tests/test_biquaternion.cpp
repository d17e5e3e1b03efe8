#include <doctest.h>

#include <random>

#include "curlam/biquaternion.hpp"

using namespace curlam;
using quat::Biquaternion;

namespace {

double dist(const Biquaternion& a, const Biquaternion& b) { return quat::norm(a - b); }

Biquaternion random_biq(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto c = [&] { return cplx(u(rng), u(rng)); };
  return {c(), c(), c(), c()};
}

}  // namespace

TEST_SUITE("biquaternion") {

TEST_CASE("unit table: e1 e2 = e3 cyclically, ei^2 = -1") {
  const Biquaternion one{1, 0, 0, 0};
  const Biquaternion e1{0, 1, 0, 0}, e2{0, 0, 1, 0}, e3{0, 0, 0, 1};

  CHECK(dist(e1 * e2, e3) == 0);
  CHECK(dist(e2 * e3, e1) == 0);
  CHECK(dist(e3 * e1, e2) == 0);
  CHECK(dist(e2 * e1, -e3) == 0);
  for (const Biquaternion& e : {e1, e2, e3}) CHECK(dist(e * e, -one) == 0);
}

TEST_CASE("hand-computed real product") {
  // (1 + 2e1 + 3e2 + 4e3)(5 + 6e1 + 7e2 + 8e3) = -60 + 12e1 + 30e2 + 24e3,
  // and the reversed order flips only the cross term.
  const Biquaternion a{1, 2, 3, 4}, b{5, 6, 7, 8};
  CHECK(dist(a * b, {-60, 12, 30, 24}) == 0);
  CHECK(dist(b * a, {-60, 20, 14, 32}) == 0);
}

TEST_CASE("hand-computed complex product, i central") {
  using namespace std::complex_literals;
  // ((1+i) + (2-i)e1) * 3e2 = (3+3i)e2 + (6-3i)e3.
  const Biquaternion a{1.0 + 1.0i, 2.0 - 1.0i, 0, 0};
  const Biquaternion b{0, 0, 3, 0};
  CHECK(dist(a * b, {0, 0, 3.0 + 3.0i, 6.0 - 3.0i}) == 0);

  // Multiplying by the central i commutes through the product.
  std::mt19937 rng(7);
  for (int k = 0; k < 50; ++k) {
    Biquaternion x = random_biq(rng), y = random_biq(rng);
    CHECK(dist((1.0i * x) * y, 1.0i * (x * y)) <= 1e-15);
    CHECK(dist(x * (1.0i * y), 1.0i * (x * y)) <= 1e-15);
  }
}

TEST_CASE("associativity and bilinearity on random samples") {
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    Biquaternion a = random_biq(rng), b = random_biq(rng), c = random_biq(rng);
    CHECK(dist((a * b) * c, a * (b * c)) <= 1e-14);
    CHECK(dist(a * (b + c), a * b + a * c) <= 1e-14);
  }
}

TEST_CASE("scalar/vector parts: Sc(ab) = a0 b0 - a.b, Vec(ab) = a0 b + b0 a + a x b") {
  std::mt19937 rng(13);
  for (int k = 0; k < 50; ++k) {
    Biquaternion a = random_biq(rng), b = random_biq(rng);
    Biquaternion p = a * b;
    cplx s = sc(a) * sc(b) - dot(vec(a), vec(b));
    Vec3c v = sc(a) * vec(b) + sc(b) * vec(a) + cross(vec(a), vec(b));
    CHECK(std::abs(sc(p) - s) <= 1e-15);
    CHECK(std::sqrt(norm2sq(vec(p) - v)) <= 1e-15);
  }
}

TEST_CASE("embed splits back into sc and vec") {
  const Vec3c v{cplx(1, 2), cplx(3, 4), cplx(5, 6)};
  Biquaternion q = embed(cplx(-1, 7), v);
  CHECK(sc(q) == cplx(-1, 7));
  CHECK(vec(q).x == v.x);
  CHECK(vec(q).y == v.y);
  CHECK(vec(q).z == v.z);
}

TEST_CASE("norm is Euclidean over the eight real coordinates") {
  CHECK(quat::norm({1, 2, 3, 4}) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
  CHECK(quat::norm({cplx(3, 4), 0, 0, 0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(quat::norm({}) == 0);
}

TEST_CASE("zero divisors exist: (1 + i e3)(1 - i e3) = 0") {
  using namespace std::complex_literals;
  const Biquaternion p{1.0, 0, 0, 1.0i};
  const Biquaternion m{1.0, 0, 0, -1.0i};
  CHECK(quat::norm(p * m) == 0);
  CHECK(quat::norm(p) > 0);
  CHECK(quat::norm(m) > 0);
}

TEST_CASE("Pt vector algebra") {
  Pt a{1, 2, 3}, b{4, 5, 6};
  CHECK(dot(a, b) == 32.0);
  Pt c = cross(a, b);
  CHECK(c.x == -3.0);
  CHECK(c.y == 6.0);
  CHECK(c.z == -3.0);
  CHECK(norm(Pt{3, 4, 0}) == 5.0);
}

}  // TEST_SUITE
