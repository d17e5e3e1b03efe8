#pragma once

// General weak solutions of the nonhomogeneous time-harmonic Maxwell system,
// in an ordinary (achiral) medium and in a chiral medium where the two
// circular polarizations propagate with distinct wave numbers.

#include <optional>
#include <utility>

#include "curlam/domain.hpp"
#include "curlam/right_inverse.hpp"

namespace curlam::maxwell {

struct MediumParams {
  double omega = 0;
  cplx eps, mu, beta;
  // Derived: wave number lambda = omega sqrt(eps mu) on the Im >= 0 branch,
  // component roots kept consistent with it, and the chiral wave numbers.
  cplx lambda, sqrt_eps, sqrt_mu, alpha1, alpha2;

  static MediumParams make(double omega, cplx eps, cplx mu, cplx beta);
};

struct EHPair {
  FieldSample E, H;
};

// Electric/magnetic pair from the volume-potential solution formula
//   E = (1/(i omega eps))(j + curl curl L[j]) + (1/(2 i omega eps))(u - v)
//   H = -curl L[j] + (1/(2 lambda))(u + v)
// with optional force-free u (wave number +lambda) and v (-lambda), verified
// within forcefree_tol before use. Requires beta = 0.
EHPair solve_achiral(const VoxelDomain& dom, const rightinv::SourceField& j,
                     const MediumParams& m, const PointGrid& eval,
                     const std::optional<AnalyticField>& u,
                     const std::optional<AnalyticField>& v, double forcefree_tol);

// Scaled pair (Ebar, Hbar) for the chiral system, assembled from the Newton
// potentials of the scaled current at the two polarization wave numbers.
// Optional force-free terms belong to wave numbers alpha1 and -alpha2.
EHPair solve_chiral(const VoxelDomain& dom, const rightinv::SourceField& j,
                    const MediumParams& m, const PointGrid& eval,
                    const std::optional<AnalyticField>& u1,
                    const std::optional<AnalyticField>& u2, double forcefree_tol);

// phi = -i omega eps E + lambda H and psi = i omega eps E + lambda H, the
// linear combination decoupling the achiral system into (D -+ lambda) pairs.
std::pair<FieldSample, FieldSample> diagonalize(const FieldSample& E,
                                                const FieldSample& H,
                                                const MediumParams& m);
EHPair undiagonalize(const FieldSample& phi, const FieldSample& psi,
                     const MediumParams& m);

// Physical fields from the scaled chiral pair: E = -Ebar/sqrt(mu),
// H = Hbar/sqrt(eps).
EHPair to_physical(const EHPair& barred, const MediumParams& m);

// FD residuals of the field equations on the once-eroded solution lattice,
// each relative to the current's L2 norm there. The charge density is
// derived as div j / (i omega), never supplied.
struct MaxwellResiduals {
  double ampere = 0;   // curl H + i omega eps E - j   (+ beta term if chiral)
  double faraday = 0;  // curl E - i omega mu H        (+ beta term if chiral)
  double div_h = 0;    // div H
  double div_e = 0;    // div E - rho/eps
  double worst() const;
};

MaxwellResiduals residuals_achiral(const EHPair& sol,
                                   const rightinv::SourceField& j,
                                   const MediumParams& m);
// Takes the scaled pair (Ebar, Hbar) and the scaled current.
MaxwellResiduals residuals_chiral(const EHPair& sol,
                                  const rightinv::SourceField& j,
                                  const MediumParams& m);

// Residual of the first Beltrami split of the chiral system,
//   (D + alpha1)(E + iH) = (i/lambda)(-div j + alpha1 j),
// for the scaled solver output and scaled current (converted internally),
// relative to the right-hand side norm.
double beltrami_split_residual(const EHPair& barred,
                               const rightinv::SourceField& j,
                               const MediumParams& m);

}  // namespace curlam::maxwell
