#pragma once

// Closed-form fundamental solutions for the Helmholtz operator and for the
// perturbed Dirac operator D + lambda, plus the analytic ball integrals used
// to correct the singular cell in volume quadratures.

#include "curlam/biquaternion.hpp"

namespace curlam::kernels {

// theta(x) = -exp(i lambda |x|) / (4 pi |x|), the fundamental solution of
// Delta + lambda^2. Throws SingularPointError at x = 0.
cplx theta(Pt x, cplx lambda);

// grad theta(x) = theta(x) (i lambda - 1/r) x/r, odd in x.
Vec3c grad_theta(Pt x, cplx lambda);

// Evaluates theta and grad theta in one pass (the hot path of the volume
// quadrature shares the exponential between them).
void theta_pair(Pt x, cplx lambda, cplx& th, Vec3c& gth);

// E_{+lambda} / E_{-lambda}: (sign lambda) theta(x) - grad theta(x) embedded
// as a biquaternion. sign is +1 or -1.
Biquaternion fundamental_E(Pt x, cplx lambda, int sign);

// Integral of theta over a ball of radius r_eq centered at the singularity:
//   (exp(i lambda r)(i lambda r - 1) + 1) / lambda^2      (lambda != 0)
//   -r^2 / 2                                              (lambda  = 0)
// with a series branch near lambda r = 0 to avoid cancellation.
cplx selfcell_theta(double r_eq, cplx lambda);

// Integral of grad theta over the same ball: identically zero (the integrand
// is odd). Kept as a named function so quadrature code can spell intent.
Vec3c selfcell_gradtheta(double r_eq, cplx lambda);

// Radius of the ball with the same volume as a cube cell of edge h.
double equivalent_radius(double h);

}  // namespace curlam::kernels
