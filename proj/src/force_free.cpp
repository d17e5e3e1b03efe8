#include "curlam/force_free.hpp"

#include <cmath>

#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"

namespace curlam::forcefree {

AnalyticField beltrami_shear(cplx lambda, int axis, double phase) {
  if (lambda == cplx{}) throw ConfigError("beltrami shear requires lambda != 0");
  if (axis < 0 || axis > 2) throw ConfigError("beltrami shear axis must be 0, 1 or 2");
  AnalyticField f;
  f.kind = FieldKind::vector;
  f.f = [lambda, axis, phase](Pt p) {
    const double coord = axis == 0 ? p.x : axis == 1 ? p.y : p.z;
    const cplx arg = lambda * coord + phase;
    const cplx s = std::sin(arg), c = std::cos(arg);
    // Components sit on the two axes following `axis` cyclically, so each
    // component is independent of its own coordinate (hence div u = 0).
    cplx comp[3] = {};
    comp[(axis + 1) % 3] = s;
    comp[(axis + 2) % 3] = -c;
    return quat::embed(cplx{}, Vec3c{comp[0], comp[1], comp[2]});
  };
  return f;
}

AnalyticField beltrami_plane_wave(cplx lambda, Pt k_hat) {
  if (lambda == cplx{}) throw ConfigError("beltrami plane wave requires lambda != 0");
  if (std::abs(norm(k_hat) - 1.0) > 1e-10)
    throw ConfigError("beltrami plane wave direction must be a unit vector");
  // Unit tangent: start from the coordinate axis least aligned with k.
  const double ax = std::abs(k_hat.x), ay = std::abs(k_hat.y), az = std::abs(k_hat.z);
  Pt seed = ax <= ay && ax <= az ? Pt{1, 0, 0}
            : ay <= az           ? Pt{0, 1, 0}
                                 : Pt{0, 0, 1};
  Pt t = seed - dot(seed, k_hat) * k_hat;
  const double tn = norm(t);
  if (tn < 1e-8) throw ConfigError("degenerate tangent construction");  // unreachable for unit k
  t = (1.0 / tn) * t;
  const Pt kxt = cross(k_hat, t);
  // p = t - i (k x t) is the circular polarization with k x p = i p, which
  // makes curl u = i lambda k x u = -lambda u.
  const Vec3c p{cplx(t.x, -kxt.x), cplx(t.y, -kxt.y), cplx(t.z, -kxt.z)};
  AnalyticField f;
  f.kind = FieldKind::vector;
  f.f = [lambda, k_hat, p](Pt x) {
    const cplx phase = std::exp(cplx(0, 1) * lambda * dot(k_hat, x));
    return quat::embed(cplx{}, phase * p);
  };
  return f;
}

ForceFreeReport verify_forcefree(const FieldSample& u, cplx lambda) {
  const FieldSample cu = fd::curl(u);
  const FieldSample du = fd::divergence(u);
  double num_curl = 0, num_div = 0, den = 0;
  for (std::size_t r = 0; r < cu.size(); ++r) {
    const auto [i, j, k] = cu.grid->ijk[r];
    const Biquaternion& uv = u.values[u.grid->row(i, j, k)];
    const Biquaternion res = cu.values[r] + lambda * uv;
    num_curl += std::norm(res.w1) + std::norm(res.w2) + std::norm(res.w3);
    num_div += std::norm(du.values[r].w0);
    den += std::norm(uv.w1) + std::norm(uv.w2) + std::norm(uv.w3);
  }
  ForceFreeReport rep;
  if (den == 0) {
    rep.degenerate = true;
    return rep;
  }
  rep.curl_residual = std::sqrt(num_curl / den);
  rep.div_residual = std::sqrt(num_div / den);
  return rep;
}

}  // namespace curlam::forcefree
