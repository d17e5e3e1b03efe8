#include "curlam/conjugate.hpp"

#include <cmath>
#include <sstream>

#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"

namespace curlam::conjugate {

namespace {

void require_lambda(cplx lambda) {
  if (lambda == cplx{})
    throw PreconditionError("conjugate construction requires lambda != 0");
}

double sample_norm(const FieldSample& f) { return f.norm2(); }

void reject(const char* condition, double residual, double tol) {
  std::ostringstream msg;
  msg << condition << " violated: residual " << residual << " exceeds tolerance "
      << tol;
  throw PreconditionError(msg.str());
}

}  // namespace

double helmholtz_residual(const FieldSample& f, cplx lambda) {
  const FieldSample lap = fd::laplacian(f);
  const cplx l2 = lambda * lambda;
  double num = 0;
  for (std::size_t r = 0; r < lap.size(); ++r) {
    const auto [i, j, k] = lap.grid->ijk[r];
    const Biquaternion res =
        lap.values[r] + l2 * f.values[f.grid->row(i, j, k)];
    num += std::norm(res.w0) + std::norm(res.w1) + std::norm(res.w2) +
           std::norm(res.w3);
  }
  const double den = std::norm(lambda) * sample_norm(f);
  if (den == 0) return std::sqrt(num);
  return std::sqrt(num) / den;
}

double curlcurl_residual(const FieldSample& w, cplx lambda) {
  FieldSample inner = fd::curl(w);
  for (std::size_t r = 0; r < inner.size(); ++r) {
    const auto [i, j, k] = inner.grid->ijk[r];
    inner.values[r] += lambda * w.values[w.grid->row(i, j, k)];
  }
  const FieldSample outer = fd::curl(inner);
  double num = 0;
  for (const auto& v : outer.values)
    num += std::norm(v.w1) + std::norm(v.w2) + std::norm(v.w3);
  const double den = std::norm(lambda) * sample_norm(w);
  if (den == 0) return std::sqrt(num);
  return std::sqrt(num) / den;
}

FieldSample from_scalar(const FieldSample& w0, cplx lambda, double tol,
                        bool enforce) {
  require_lambda(lambda);
  if (enforce) {
    const double res = helmholtz_residual(w0, lambda);
    if (res > tol) reject("Helmholtz precondition on the scalar part", res, tol);
  }
  FieldSample w = fd::gradient(w0);
  const cplx scale = -1.0 / lambda;
  for (auto& v : w.values) {
    v.w1 *= scale;
    v.w2 *= scale;
    v.w3 *= scale;
  }
  return w;
}

FieldSample from_vector(const FieldSample& w_vec, cplx lambda, double tol,
                        bool enforce) {
  require_lambda(lambda);
  if (enforce) {
    const double helm = helmholtz_residual(w_vec, lambda);
    if (helm > tol)
      reject("Helmholtz precondition on the vector part", helm, tol);
    const double cc = curlcurl_residual(w_vec, lambda);
    if (cc > tol) reject("curl(curl + lambda) condition", cc, tol);
  }
  FieldSample w0 = fd::divergence(w_vec);
  const cplx scale = 1.0 / lambda;
  for (auto& v : w0.values) v.w0 *= scale;
  return w0;
}

}  // namespace curlam::conjugate
