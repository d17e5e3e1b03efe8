#include "curlam/maxwell.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

#include "curlam/errors.hpp"
#include "curlam/fd_ops.hpp"
#include "curlam/force_free.hpp"
#include "curlam/potentials.hpp"

namespace curlam::maxwell {

namespace {

const cplx kI(0.0, 1.0);

// Sample and vet an optional homogeneous term before it enters a solution.
FieldSample checked_homogeneous(const std::optional<AnalyticField>& u,
                                cplx lambda, const PointGrid& eval, double tol,
                                const char* name) {
  if (!u) {
    FieldSample zero;
    zero.kind = FieldKind::vector;
    return zero;
  }
  FieldSample s = grid::sample(*u, eval);
  forcefree::ForceFreeReport rep = forcefree::verify_forcefree(s, lambda);
  if (!rep.pass(tol)) {
    std::ostringstream msg;
    msg << "homogeneous term " << name
        << " fails the force-free check at its wave number: curl residual "
        << rep.curl_residual << ", div residual " << rep.div_residual
        << ", tolerance " << tol;
    throw PreconditionError(msg.str());
  }
  return s;
}

// Values of f at the nodes of sub; f must live on a containing lattice with
// the same meta (the usual situation after differing erosion depths).
std::vector<Biquaternion> values_on(const FieldSample& f, const PointGrid& sub) {
  if (!f.grid) throw PreconditionError("field sample lacks a lattice");
  std::vector<Biquaternion> out(sub.size());
  for (std::size_t r = 0; r < sub.size(); ++r) {
    const std::array<int, 3>& c = sub.ijk[r];
    int row = f.grid->row(c[0], c[1], c[2]);
    if (row < 0) throw PreconditionError("lattice mismatch between samples");
    out[r] = f.values[static_cast<std::size_t>(row)];
  }
  return out;
}

FieldSample vector_sample_on(const PointGrid& g) {
  FieldSample s;
  s.kind = FieldKind::vector;
  s.points = g.points;
  s.values.resize(g.size());
  s.grid = g;
  return s;
}

}  // namespace

MediumParams MediumParams::make(double omega, cplx eps, cplx mu, cplx beta) {
  MediumParams m;
  m.omega = omega;
  m.eps = eps;
  m.mu = mu;
  m.beta = beta;
  m.sqrt_eps = std::sqrt(eps);
  m.sqrt_mu = std::sqrt(mu);
  m.lambda = omega * std::sqrt(eps * mu);
  // Keep the wave number on the upper half plane branch; the component root
  // of mu follows its sign so that lambda = omega sqrt_eps sqrt_mu stays put.
  if (m.lambda.imag() < 0.0) {
    m.lambda = -m.lambda;
    m.sqrt_mu = -m.sqrt_mu;
  }
  if (!(std::abs(m.lambda) > 0.0))
    throw ConfigError("medium is degenerate: omega, eps and mu must all be nonzero");
  if (beta == cplx(0.0, 0.0)) {
    m.alpha1 = m.lambda;
    m.alpha2 = m.lambda;
  } else {
    cplx d1 = 1.0 + m.lambda * beta;
    cplx d2 = 1.0 - m.lambda * beta;
    if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
      throw ConfigError("chirality parameter is resonant: 1 +/- lambda*beta vanishes");
    m.alpha1 = m.lambda / d1;
    m.alpha2 = m.lambda / d2;
  }
  return m;
}

EHPair solve_achiral(const VoxelDomain& dom, const rightinv::SourceField& j,
                     const MediumParams& m, const PointGrid& eval,
                     const std::optional<AnalyticField>& u,
                     const std::optional<AnalyticField>& v, double forcefree_tol) {
  if (m.beta != cplx(0.0, 0.0))
    throw PreconditionError("achiral solver requires a medium with beta = 0");

  FieldSample us = checked_homogeneous(u, m.lambda, eval, forcefree_tol, "u");
  FieldSample vs = checked_homogeneous(v, -m.lambda, eval, forcefree_tol, "v");

  FieldSample Lj = potentials::newton_L(dom, j.cells, m.lambda, eval);
  FieldSample cL = fd::curl(Lj);
  FieldSample ccL = fd::curl(cL);
  const PointGrid& out = *ccL.grid;
  if (out.size() == 0)
    throw PreconditionError(
        "evaluation lattice too small: nothing survives the solve's two "
        "finite-difference erosions");

  std::vector<Biquaternion> cl_out = values_on(cL, out);
  std::vector<Biquaternion> u_out, v_out;
  if (u) u_out = values_on(us, out);
  if (v) v_out = values_on(vs, out);

  const cplx iwe = kI * m.omega * m.eps;
  const cplx inv_iwe = 1.0 / iwe;

  EHPair sol{vector_sample_on(out), vector_sample_on(out)};
  for (std::size_t r = 0; r < out.size(); ++r) {
    Vec3c jx = vec(j.at(out.points[r]));
    Vec3c Ev = inv_iwe * (jx + vec(ccL.values[r]));
    Vec3c Hv = -vec(cl_out[r]);
    if (u || v) {
      Vec3c uv = u ? vec(u_out[r]) : Vec3c{};
      Vec3c vv = v ? vec(v_out[r]) : Vec3c{};
      Ev += (0.5 * inv_iwe) * (uv - vv);
      Hv += (0.5 / m.lambda) * (uv + vv);
    }
    sol.E.values[r] = embed(cplx(0, 0), Ev);
    sol.H.values[r] = embed(cplx(0, 0), Hv);
  }
  return sol;
}

EHPair solve_chiral(const VoxelDomain& dom, const rightinv::SourceField& j,
                    const MediumParams& m, const PointGrid& eval,
                    const std::optional<AnalyticField>& u1,
                    const std::optional<AnalyticField>& u2, double forcefree_tol) {
  FieldSample u1s = checked_homogeneous(u1, m.alpha1, eval, forcefree_tol, "u1");
  FieldSample u2s = checked_homogeneous(u2, -m.alpha2, eval, forcefree_tol, "u2");

  // Newton potential of the current at each polarization wave number. When
  // beta = 0 the two coincide bitwise, so compute the chain once.
  FieldSample L1 = potentials::newton_L(dom, j.cells, m.alpha1, eval);
  FieldSample cL1 = fd::curl(L1);
  FieldSample ccL1 = fd::curl(cL1);
  FieldSample cL2, ccL2;
  if (m.alpha1 == m.alpha2) {
    cL2 = cL1;
    ccL2 = ccL1;
  } else {
    FieldSample L2 = potentials::newton_L(dom, j.cells, m.alpha2, eval);
    cL2 = fd::curl(L2);
    ccL2 = fd::curl(cL2);
  }
  const PointGrid& out = *ccL1.grid;
  if (out.size() == 0)
    throw PreconditionError(
        "evaluation lattice too small: nothing survives the solve's two "
        "finite-difference erosions");

  std::vector<Biquaternion> cl1_out = values_on(cL1, out);
  std::vector<Biquaternion> cl2_out = values_on(cL2, out);
  std::vector<Biquaternion> cc2_out = values_on(ccL2, out);
  std::vector<Biquaternion> u1_out, u2_out;
  if (u1) u1_out = values_on(u1s, out);
  if (u2) u2_out = values_on(u2s, out);

  const cplx e_coef = -kI / (2.0 * m.omega * m.eps);
  const cplx h_coef = -1.0 / (2.0 * m.lambda);

  EHPair sol{vector_sample_on(out), vector_sample_on(out)};
  for (std::size_t r = 0; r < out.size(); ++r) {
    Vec3c jx = vec(j.at(out.points[r]));
    Vec3c a1c1 = m.alpha1 * vec(cl1_out[r]);
    Vec3c a2c2 = m.alpha2 * vec(cl2_out[r]);
    Vec3c cc1 = vec(ccL1.values[r]);
    Vec3c cc2 = vec(cc2_out[r]);

    Vec3c Ev = e_coef * (2.0 * jx + cc1 + cc2 - a1c1 + a2c2);
    Vec3c Hv = h_coef * (a1c1 + a2c2 - (cc1 - cc2));
    if (u1 || u2) {
      Vec3c w1 = u1 ? vec(u1_out[r]) : Vec3c{};
      Vec3c w2 = u2 ? vec(u2_out[r]) : Vec3c{};
      Ev += (-0.5 * m.sqrt_mu) * (w1 + w2);
      Hv += (m.sqrt_eps / (2.0 * kI)) * (w1 - w2);
    }
    sol.E.values[r] = embed(cplx(0, 0), Ev);
    sol.H.values[r] = embed(cplx(0, 0), Hv);
  }
  return sol;
}

std::pair<FieldSample, FieldSample> diagonalize(const FieldSample& E,
                                                const FieldSample& H,
                                                const MediumParams& m) {
  if (E.size() != H.size())
    throw PreconditionError("diagonalize: E and H sampled on different point sets");
  const cplx iwe = kI * m.omega * m.eps;
  FieldSample phi = E, psi = E;
  for (std::size_t r = 0; r < E.size(); ++r) {
    Vec3c e = vec(E.values[r]), h = vec(H.values[r]);
    phi.values[r] = embed(cplx(0, 0), -iwe * e + m.lambda * h);
    psi.values[r] = embed(cplx(0, 0), iwe * e + m.lambda * h);
  }
  return {std::move(phi), std::move(psi)};
}

EHPair undiagonalize(const FieldSample& phi, const FieldSample& psi,
                     const MediumParams& m) {
  if (phi.size() != psi.size())
    throw PreconditionError("undiagonalize: phi and psi sampled on different point sets");
  const cplx inv_2iwe = 1.0 / (2.0 * kI * m.omega * m.eps);
  const cplx inv_2l = 1.0 / (2.0 * m.lambda);
  EHPair sol{phi, phi};
  for (std::size_t r = 0; r < phi.size(); ++r) {
    Vec3c p = vec(phi.values[r]), q = vec(psi.values[r]);
    sol.E.values[r] = embed(cplx(0, 0), inv_2iwe * (q - p));
    sol.H.values[r] = embed(cplx(0, 0), inv_2l * (q + p));
  }
  return sol;
}

double MaxwellResiduals::worst() const {
  return std::max(std::max(ampere, faraday), std::max(div_h, div_e));
}

namespace {

double l2(const std::vector<Biquaternion>& v) {
  double s = 0;
  for (const Biquaternion& w : v)
    s += std::norm(w.w0) + std::norm(w.w1) + std::norm(w.w2) + std::norm(w.w3);
  return std::sqrt(s);
}

// Shared FD residual core; beta = 0 reduces to the plain system.
MaxwellResiduals residuals_core(const EHPair& sol, const rightinv::SourceField& j,
                                const MediumParams& m, cplx beta) {
  if (!sol.E.grid || !sol.H.grid)
    throw PreconditionError("Maxwell residuals need lattice-tagged solutions");
  FieldSample cE = fd::curl(sol.E);
  FieldSample cH = fd::curl(sol.H);
  FieldSample dE = fd::divergence(sol.E);
  FieldSample dH = fd::divergence(sol.H);
  const PointGrid& out = *cE.grid;
  if (out.size() == 0)
    throw PreconditionError(
        "solution lattice too small to difference the field equations");

  FieldSample js = grid::sample(AnalyticField{FieldKind::vector, j.at}, *sol.E.grid);
  FieldSample dj = fd::divergence(js);

  std::vector<Biquaternion> e3 = values_on(sol.E, out);
  std::vector<Biquaternion> h3 = values_on(sol.H, out);
  std::vector<Biquaternion> j3 = values_on(js, out);

  const cplx iwe = kI * m.omega * m.eps;
  const cplx iwm = kI * m.omega * m.mu;
  const cplx rho_coef = 1.0 / (kI * m.omega * m.eps);  // (div j)/(i w) / eps

  std::vector<Biquaternion> amp(out.size()), far(out.size()), de(out.size()),
      dh(out.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    Vec3c ce = vec(cE.values[r]), ch = vec(cH.values[r]);
    Vec3c e = vec(e3[r]), h = vec(h3[r]), jv = vec(j3[r]);
    amp[r] = embed(cplx(0, 0), ch + iwe * (e + beta * ce) - jv);
    far[r] = embed(cplx(0, 0), ce - iwm * (h + beta * ch));
    de[r] = embed(sc(dE.values[r]) - rho_coef * sc(dj.values[r]), Vec3c{});
    dh[r] = embed(sc(dH.values[r]), Vec3c{});
  }
  const double jn = l2(j3);
  const double den = jn > 0 ? jn : 1.0;
  MaxwellResiduals res;
  res.ampere = l2(amp) / den;
  res.faraday = l2(far) / den;
  res.div_e = l2(de) / den;
  res.div_h = l2(dh) / den;
  return res;
}

}  // namespace

MaxwellResiduals residuals_achiral(const EHPair& sol,
                                   const rightinv::SourceField& j,
                                   const MediumParams& m) {
  return residuals_core(sol, j, m, cplx(0, 0));
}

MaxwellResiduals residuals_chiral(const EHPair& sol,
                                  const rightinv::SourceField& j,
                                  const MediumParams& m) {
  return residuals_core(sol, j, m, m.beta);
}

double beltrami_split_residual(const EHPair& barred,
                               const rightinv::SourceField& j,
                               const MediumParams& m) {
  if (!barred.E.grid) throw PreconditionError("Beltrami split needs lattice-tagged solutions");
  EHPair phys = to_physical(barred, m);
  FieldSample phi = phys.E;
  phi.kind = FieldKind::vector;
  for (std::size_t r = 0; r < phi.size(); ++r)
    phi.values[r] = embed(cplx(0, 0), vec(phys.E.values[r]) + kI * vec(phys.H.values[r]));

  FieldSample dphi = fd::dirac(phi);
  const PointGrid& out = *dphi.grid;
  if (out.size() == 0)
    throw PreconditionError(
        "solution lattice too small to difference the polarization split");
  std::vector<Biquaternion> phi3 = values_on(phi, out);

  const cplx inv_se = 1.0 / m.sqrt_eps;
  FieldSample js = grid::sample(AnalyticField{FieldKind::vector, j.at}, *barred.E.grid);
  for (Biquaternion& w : js.values) w = inv_se * w;  // unscaled current
  FieldSample dj = fd::divergence(js);
  std::vector<Biquaternion> j3 = values_on(js, out);

  const cplx il = kI / m.lambda;
  std::vector<Biquaternion> lhs(out.size()), rhs(out.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    lhs[r] = dphi.values[r] + m.alpha1 * phi3[r];
    rhs[r] = embed(-il * sc(dj.values[r]), (il * m.alpha1) * vec(j3[r]));
  }
  for (std::size_t r = 0; r < out.size(); ++r) lhs[r] -= rhs[r];
  const double den = l2(rhs);
  return l2(lhs) / (den > 0 ? den : 1.0);
}

EHPair to_physical(const EHPair& barred, const MediumParams& m) {
  EHPair phys = barred;
  const cplx ce = -1.0 / m.sqrt_mu;
  const cplx ch = 1.0 / m.sqrt_eps;
  for (std::size_t r = 0; r < phys.E.size(); ++r)
    phys.E.values[r] = ce * phys.E.values[r];
  for (std::size_t r = 0; r < phys.H.size(); ++r)
    phys.H.values[r] = ch * phys.H.values[r];
  return phys;
}

}  // namespace curlam::maxwell
