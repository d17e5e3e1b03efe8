#pragma once

// Analytic force-free (Beltrami) field families, curl u + lambda u = 0, and
// the numerical verifier used to vet homogeneous terms before they enter a
// solution.

#include "curlam/domain.hpp"

namespace curlam::forcefree {

// Real shear family. For axis=2 (z): (sin(lambda x3 + phase),
// -cos(lambda x3 + phase), 0); cyclic for the other axes. Divergence-free
// and curl u = -lambda u identically.
AnalyticField beltrami_shear(cplx lambda, int axis, double phase);

// Circularly polarized plane wave p exp(i lambda k.x) with k x p = i p,
// built from any unit direction k (p = t - i k x t for a unit t normal to k).
AnalyticField beltrami_plane_wave(cplx lambda, Pt k_hat);

struct ForceFreeReport {
  double curl_residual = 0;  // ||curl u + lambda u|| / ||u||
  double div_residual = 0;   // ||div u|| / ||u||
  bool degenerate = false;   // ||u|| = 0: trivially force-free
  bool pass(double tol) const {
    return degenerate || (curl_residual <= tol && div_residual <= tol);
  }
};

// FD residuals of the force-free system for a lattice sample of u.
ForceFreeReport verify_forcefree(const FieldSample& u, cplx lambda);

}  // namespace curlam::forcefree
