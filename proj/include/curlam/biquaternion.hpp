#pragma once

// Complex-quaternion (biquaternion) algebra: the value type carried by every
// field and kernel in this library. The complex unit i is central, i.e. it
// commutes with the quaternionic units e1, e2, e3.

#include <cmath>
#include <complex>

namespace curlam {

using cplx = std::complex<double>;

// A point in R^3 (grid nodes, cell centers, mesh vertices).
struct Pt {
  double x = 0, y = 0, z = 0;
};

inline Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Pt operator*(double s, Pt a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Pt a, Pt b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Pt cross(Pt a, Pt b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Pt a) { return std::sqrt(dot(a, a)); }

// Complex 3-vector. All bilinear forms below are unconjugated: dot(a,b) is
// sum a_k b_k, matching the algebraic identities Sc(ab) = -a.b, Vec(ab) = axb.
struct Vec3c {
  cplx x{}, y{}, z{};
};

inline Vec3c operator+(const Vec3c& a, const Vec3c& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3c operator-(const Vec3c& a, const Vec3c& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3c operator-(const Vec3c& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3c operator*(const cplx& s, const Vec3c& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3c operator*(double s, const Vec3c& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3c& operator+=(Vec3c& a, const Vec3c& b) { a.x += b.x; a.y += b.y; a.z += b.z; return a; }
inline Vec3c& operator-=(Vec3c& a, const Vec3c& b) { a.x -= b.x; a.y -= b.y; a.z -= b.z; return a; }
inline cplx dot(const Vec3c& a, const Vec3c& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3c cross(const Vec3c& a, const Vec3c& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3c to_vec3c(Pt p) { return {cplx(p.x), cplx(p.y), cplx(p.z)}; }
inline double norm2sq(const Vec3c& a) { return std::norm(a.x) + std::norm(a.y) + std::norm(a.z); }

namespace quat {

// Storage order (w0, w1, w2, w3): scalar part first, vector part along
// e1, e2, e3.
struct Biquaternion {
  cplx w0{}, w1{}, w2{}, w3{};
};

inline Biquaternion embed(const cplx& s, const Vec3c& v) { return {s, v.x, v.y, v.z}; }
inline cplx sc(const Biquaternion& a) { return a.w0; }
inline Vec3c vec(const Biquaternion& a) { return {a.w1, a.w2, a.w3}; }

inline Biquaternion operator+(const Biquaternion& a, const Biquaternion& b) {
  return {a.w0 + b.w0, a.w1 + b.w1, a.w2 + b.w2, a.w3 + b.w3};
}
inline Biquaternion operator-(const Biquaternion& a, const Biquaternion& b) {
  return {a.w0 - b.w0, a.w1 - b.w1, a.w2 - b.w2, a.w3 - b.w3};
}
inline Biquaternion operator-(const Biquaternion& a) { return {-a.w0, -a.w1, -a.w2, -a.w3}; }
inline Biquaternion operator*(const cplx& s, const Biquaternion& a) {
  return {s * a.w0, s * a.w1, s * a.w2, s * a.w3};
}
inline Biquaternion operator*(double s, const Biquaternion& a) {
  return {s * a.w0, s * a.w1, s * a.w2, s * a.w3};
}
inline Biquaternion& operator+=(Biquaternion& a, const Biquaternion& b) {
  a.w0 += b.w0; a.w1 += b.w1; a.w2 += b.w2; a.w3 += b.w3;
  return a;
}
inline Biquaternion& operator-=(Biquaternion& a, const Biquaternion& b) {
  a.w0 -= b.w0; a.w1 -= b.w1; a.w2 -= b.w2; a.w3 -= b.w3;
  return a;
}

// Quaternion product ab = a0 b0 - a.b + a0 b + b0 a + a x b, extended
// complex-bilinearly. Realizes e1 e2 = e3 (cyclically) and ei^2 = -1.
inline Biquaternion mul(const Biquaternion& a, const Biquaternion& b) {
  const Vec3c av = vec(a), bv = vec(b);
  const cplx s = a.w0 * b.w0 - dot(av, bv);
  const Vec3c v = a.w0 * bv + b.w0 * av + cross(av, bv);
  return embed(s, v);
}
inline Biquaternion operator*(const Biquaternion& a, const Biquaternion& b) { return mul(a, b); }

// Euclidean norm over the 8 real coordinates: sqrt of the sum of squared
// complex moduli of the 4 components.
inline double norm(const Biquaternion& a) {
  return std::sqrt(std::norm(a.w0) + std::norm(a.w1) + std::norm(a.w2) + std::norm(a.w3));
}

}  // namespace quat

using quat::Biquaternion;
using quat::embed;
using quat::mul;
using quat::sc;
using quat::vec;

}  // namespace curlam
