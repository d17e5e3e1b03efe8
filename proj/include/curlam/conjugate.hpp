#pragma once

// Metaharmonic conjugate construction: completing a scalar Helmholtz
// solution to a monogenic pair, and recovering the scalar partner of a
// suitable vector field.

#include "curlam/domain.hpp"

namespace curlam::conjugate {

// ||(laplacian + lambda^2) f||_2 normalized by |lambda|^2 ||f||_2.
double helmholtz_residual(const FieldSample& f, cplx lambda);
// ||curl(curl w + lambda w)||_2 normalized by |lambda|^2 ||w||_2.
double curlcurl_residual(const FieldSample& w, cplx lambda);

// w_vec = -grad(w0)/lambda. Requires (Delta + lambda^2) w0 ~ 0 within tol;
// enforce=false records nothing and skips the check (exploratory use).
FieldSample from_scalar(const FieldSample& w0, cplx lambda, double tol,
                        bool enforce = true);

// w0 = div(w_vec)/lambda, the unique scalar partner. Requires both the
// Helmholtz precondition on w_vec and curl(curl w + lambda w) ~ 0 within tol.
FieldSample from_vector(const FieldSample& w_vec, cplx lambda, double tol,
                        bool enforce = true);

}  // namespace curlam::conjugate
