#include "curlam/potentials.hpp"

#include "curlam/errors.hpp"
#include "curlam/kernels.hpp"
#include "curlam/parallel.hpp"

namespace curlam::potentials {

namespace {

void check_source(const VoxelDomain& dom, const FieldSample& w) {
  if (dom.size() == 0) throw PreconditionError("quadrature domain is empty");
  if (w.size() != dom.size())
    throw PreconditionError("source field is not sampled at the domain cells");
}

// One quadrature pass computing every channel at once. Each channel only
// touches its own accumulator, so the value of any single channel does not
// depend on which others are consumed — that is what makes the operator
// decomposition exact in floating point.
struct ChannelValues {
  std::vector<cplx> s0;          // scalar channel
  std::vector<Vec3c> v1, v2;     // gradient / vector channels
  std::vector<Biquaternion> lw;  // componentwise Newton channel
};

ChannelValues accumulate(const VoxelDomain& dom, const FieldSample& w,
                         cplx lambda, int sign, const std::vector<Pt>& eval) {
  check_source(dom, w);
  const double s = sign < 0 ? -1.0 : 1.0;
  const cplx self_theta =
      kernels::selfcell_theta(kernels::equivalent_radius(dom.h), lambda);
  const cplx self_lt = s * (lambda * self_theta);

  ChannelValues out;
  out.s0.resize(eval.size());
  out.v1.resize(eval.size());
  out.v2.resize(eval.size());
  out.lw.resize(eval.size());

  parallel_for(eval.size(), [&](std::size_t p) {
    const Pt x = eval[p];
    const int self = dom.containing_cell(x);
    cplx s0{};
    Vec3c v1{}, v2{};
    Biquaternion lw{};
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (static_cast<int>(j) == self) continue;
      cplx th;
      Vec3c gth;
      kernels::theta_pair(x - dom.centers[j], lambda, th, gth);
      const double wgt = dom.weights[j];
      const Biquaternion& wj = w.values[j];
      const Vec3c wv = quat::vec(wj);
      const cplx lt = s * (lambda * th);
      s0 += (lt * wj.w0 + dot(gth, wv)) * wgt;
      v1 -= (wj.w0 * wgt) * gth;
      v2 += wgt * (lt * wv - cross(gth, wv));
      lw += (th * wgt) * wj;
    }
    if (self >= 0) {
      const Biquaternion& wj = w.values[self];
      const Vec3c wv = quat::vec(wj);
      // Analytic ball integral carries its own volume measure; the odd
      // grad-theta part integrates to zero over the centered ball.
      s0 += self_lt * wj.w0;
      v2 += self_lt * wv;
      lw += self_theta * wj;
    }
    out.s0[p] = s0;
    out.v1[p] = v1;
    out.v2[p] = v2;
    out.lw[p] = lw;
  });
  return out;
}

FieldSample pack(FieldKind kind, const std::vector<Pt>& eval,
                 std::vector<Biquaternion>&& values) {
  FieldSample f;
  f.kind = kind;
  f.points = eval;
  f.values = std::move(values);
  return f;
}

template <typename Op>
FieldSample on_grid(const PointGrid& eval, Op&& op) {
  FieldSample f = op(eval.points);
  f.grid = eval;
  return f;
}

}  // namespace

FieldSample newton_L(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
                     const std::vector<Pt>& eval) {
  ChannelValues ch = accumulate(dom, w, lambda, +1, eval);
  return pack(w.kind, eval, std::move(ch.lw));
}

FieldSample teodorescu_T(const VoxelDomain& dom, const FieldSample& w,
                         cplx lambda, const std::vector<Pt>& eval, int sign) {
  ChannelValues ch = accumulate(dom, w, lambda, sign, eval);
  std::vector<Biquaternion> v(eval.size());
  for (std::size_t p = 0; p < eval.size(); ++p)
    v[p] = quat::embed(ch.s0[p], ch.v1[p] + ch.v2[p]);
  return pack(FieldKind::full, eval, std::move(v));
}

FieldSample t0(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const std::vector<Pt>& eval) {
  ChannelValues ch = accumulate(dom, w, lambda, sign, eval);
  std::vector<Biquaternion> v(eval.size());
  for (std::size_t p = 0; p < eval.size(); ++p)
    v[p] = quat::embed(ch.s0[p], Vec3c{});
  return pack(FieldKind::scalar, eval, std::move(v));
}

FieldSample t1(const VoxelDomain& dom, const FieldSample& w0, cplx lambda,
               const std::vector<Pt>& eval) {
  ChannelValues ch = accumulate(dom, w0, lambda, +1, eval);
  std::vector<Biquaternion> v(eval.size());
  for (std::size_t p = 0; p < eval.size(); ++p)
    v[p] = quat::embed(cplx{}, ch.v1[p]);
  return pack(FieldKind::vector, eval, std::move(v));
}

FieldSample t2(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const std::vector<Pt>& eval) {
  ChannelValues ch = accumulate(dom, w, lambda, sign, eval);
  std::vector<Biquaternion> v(eval.size());
  for (std::size_t p = 0; p < eval.size(); ++p)
    v[p] = quat::embed(cplx{}, ch.v2[p]);
  return pack(FieldKind::vector, eval, std::move(v));
}

FieldSample newton_L(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
                     const PointGrid& eval) {
  return on_grid(eval, [&](const std::vector<Pt>& pts) {
    return newton_L(dom, w, lambda, pts);
  });
}

FieldSample teodorescu_T(const VoxelDomain& dom, const FieldSample& w,
                         cplx lambda, const PointGrid& eval, int sign) {
  return on_grid(eval, [&](const std::vector<Pt>& pts) {
    return teodorescu_T(dom, w, lambda, pts, sign);
  });
}

FieldSample t0(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const PointGrid& eval) {
  return on_grid(eval, [&](const std::vector<Pt>& pts) {
    return t0(dom, w, lambda, sign, pts);
  });
}

FieldSample t1(const VoxelDomain& dom, const FieldSample& w0, cplx lambda,
               const PointGrid& eval) {
  return on_grid(eval, [&](const std::vector<Pt>& pts) {
    return t1(dom, w0, lambda, pts);
  });
}

FieldSample t2(const VoxelDomain& dom, const FieldSample& w, cplx lambda,
               int sign, const PointGrid& eval) {
  return on_grid(eval, [&](const std::vector<Pt>& pts) {
    return t2(dom, w, lambda, sign, pts);
  });
}

}  // namespace curlam::potentials
