#pragma once

#include <string>

#include "curlam/errors.hpp"

namespace curlam {

// Every numerical tolerance used by the residual checks lives here, in one
// table, so calibration changes (or profile switches) touch a single place.
struct Tolerances {
  // Identities that hold to rounding in the discrete algebra.
  double exact = 1e-12;
  // Relative L2 residual for quadrature-backed operators at the reference
  // resolution (n = 32 source cells per axis).
  double quadrature = 0.05;
  // Residuals that stack several FD applications on top of the quadrature
  // (Maxwell systems, the gauge-transformed solve).
  double maxwell = 0.07;
  double gauge = 0.07;
  // Conjugate round trip at h = 1/16.
  double roundtrip = 0.01;
  // Chiral beta = 0 collapse onto the plain-medium solver.
  double collapse = 1e-10;
  // Neumann pieces.
  double neumann_bie = 0.05;
  double neumann_recovery = 0.10;
  // Tangentiality of the solved surface density after projection.
  double tangential = 1e-10;
  // Error-ratio thresholds for refinement checks (not scaled by profiles).
  double refine_ratio = 1.5;
  double fd_ratio = 3.5;
  // Residual level accepted by force-free / Helmholtz precondition checks.
  double precondition = 0.05;

  // Scales the residual tolerances (not the ratio thresholds).
  Tolerances scaled(double m) const {
    Tolerances t = *this;
    t.exact *= m;
    t.quadrature *= m;
    t.maxwell *= m;
    t.gauge *= m;
    t.roundtrip *= m;
    t.collapse *= m;
    t.neumann_bie *= m;
    t.neumann_recovery *= m;
    t.tangential *= m;
    t.precondition *= m;
    return t;
  }

  static Tolerances profile(const std::string& name) {
    Tolerances base;
    if (name == "strict") return base.scaled(0.5);
    if (name == "default") return base;
    if (name == "relaxed") return base.scaled(2.0);
    throw ConfigError("unknown tolerance profile '" + name +
                      "' (expected strict, default or relaxed)");
  }
};

}  // namespace curlam
