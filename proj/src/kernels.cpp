#include "curlam/kernels.hpp"

#include <cmath>

#include "curlam/errors.hpp"

namespace curlam::kernels {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

// exp(i lambda r) for complex lambda via one real exponential:
// exp(i(a+bi)r) = exp(-br) (cos(ar) + i sin(ar)).
inline cplx exp_ilr(cplx lambda, double r) {
  const double a = lambda.real(), b = lambda.imag();
  const double m = std::exp(-b * r);
  return {m * std::cos(a * r), m * std::sin(a * r)};
}

}  // namespace

cplx theta(Pt x, cplx lambda) {
  const double r = norm(x);
  if (r == 0.0) throw SingularPointError("theta evaluated at its singularity x = 0");
  return (-1.0 / (kFourPi * r)) * exp_ilr(lambda, r);
}

Vec3c grad_theta(Pt x, cplx lambda) {
  cplx th;
  Vec3c g;
  theta_pair(x, lambda, th, g);
  return g;
}

void theta_pair(Pt x, cplx lambda, cplx& th, Vec3c& gth) {
  const double r = norm(x);
  if (r == 0.0) throw SingularPointError("theta evaluated at its singularity x = 0");
  th = (-1.0 / (kFourPi * r)) * exp_ilr(lambda, r);
  // grad theta = theta * (i lambda - 1/r) * x/r
  const cplx f = th * (cplx(0, 1) * lambda - cplx(1.0 / r)) * (1.0 / r);
  gth = {f * x.x, f * x.y, f * x.z};
}

Biquaternion fundamental_E(Pt x, cplx lambda, int sign) {
  cplx th;
  Vec3c g;
  theta_pair(x, lambda, th, g);
  return embed(double(sign) * lambda * th, -g);
}

cplx selfcell_theta(double r_eq, cplx lambda) {
  const cplx z = cplx(0, 1) * lambda * r_eq;
  if (std::abs(z) < 0.5) {
    // -r^2 sum_{m>=0} z^m (m+1)/(m+2)!  (the m = 0 term alone gives the
    // lambda = 0 value -r^2/2).
    cplx sum = 0, zm = 1;
    double fact = 2.0;  // (m+2)! running value, starts at 2! = 2
    for (int m = 0; m <= 24; ++m) {
      sum += zm * ((m + 1) / fact);
      zm *= z;
      fact *= (m + 3);
    }
    return -(r_eq * r_eq) * sum;
  }
  return -(std::exp(z) * (z - 1.0) + 1.0) / (lambda * lambda);
}

Vec3c selfcell_gradtheta(double /*r_eq*/, cplx /*lambda*/) { return {}; }

double equivalent_radius(double h) {
  return std::cbrt(3.0 * h * h * h / kFourPi);
}

}  // namespace curlam::kernels
