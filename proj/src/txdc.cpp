// SPDX-License-Identifier: Apache-2.0
#include "swipt/txdc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace swipt::txdc {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Coefficients of F written over the two scalar channel gains
// s_A = trace(W h_RA h_RA†) and s_B = trace(W h_RB h_RB†).
struct Coeffs {
  double k_a, c_a;  // f: log2(k_a s_A + c_a)
  double k_b, c_b;
  double rho;       // g: log2(ρ s + c)
};

Coeffs coeffs(const DcContext& ctx) {
  return {ctx.rho * (ctx.p_b * ctx.c_rb + 1.0), ctx.p_a * ctx.g_aa + 1.0, ctx.rho * (ctx.p_a * ctx.c_ra + 1.0),
          ctx.p_b * ctx.g_bb + 1.0, ctx.rho};
}

double f_of(const Coeffs& c, double s_a, double s_b) {
  return std::log2(c.k_a * s_a + c.c_a) + std::log2(c.k_b * s_b + c.c_b);
}

double g_of(const Coeffs& c, double s_a, double s_b) {
  return std::log2(c.rho * s_a + c.c_a) + std::log2(c.rho * s_b + c.c_b);
}

void check_ctx(const HermitianMatrix& w, const DcContext& ctx) {
  if (w.dim() != ctx.h_ra.dim() || w.dim() != ctx.h_rb.dim())
    throw ContractViolation("txdc: W dimension does not match the relay transmit channels");
}

// Tangent plane of g at (s_A, s_B) = (ak, bk), in the scalar coordinates.
struct Tangent {
  double g_k, s_ak, s_bk, d_a, d_b;
  double at(const Coeffs& c, double s_a, double s_b) const {
    return g_k + (c.rho / kLn2) * ((s_a - s_ak) / d_a + (s_b - s_bk) / d_b);
  }
};

Tangent tangent(const Coeffs& c, double s_ak, double s_bk) {
  return {g_of(c, s_ak, s_bk), s_ak, s_bk, c.rho * s_ak + c.c_a, c.rho * s_bk + c.c_b};
}

double golden_max(auto&& phi, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = phi(x1);
  double f2 = phi(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = phi(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = phi(x1);
    }
  }
  return 0.5 * (lo + hi);
}

struct Reduced {
  std::vector<CVector> basis;  // columns of B
  CVector a;                   // B† h_RA
  CVector b;                   // B† h_RB
};

Reduced reduce(const DcContext& ctx, const DcConstraints& cons) {
  Reduced r;
  r.basis = zf_basis(cons, ctx.h_ra.dim());
  const std::size_t k = r.basis.size();
  r.a = CVector(k);
  r.b = CVector(k);
  for (std::size_t i = 0; i < k; ++i) {
    r.a[i] = cxla::dot(r.basis[i], ctx.h_ra);
    r.b[i] = cxla::dot(r.basis[i], ctx.h_rb);
  }
  return r;
}

HermitianMatrix normalize_trace(HermitianMatrix v, double t) {
  const double tr = v.trace();
  if (tr > 0.0) {
    v *= t / tr;
    return v;
  }
  return (t / static_cast<double>(v.dim())) * HermitianMatrix::identity(v.dim());
}

// Conditional gradient on {V ⪰ 0, trace V = T} for the surrogate
// f − g_L, starting from V (already trace-normalized).
SubproblemResult conditional_gradient(HermitianMatrix v, const Reduced& red, const Coeffs& c, const Tangent& tan,
                                      double t, const DcOptions& opts) {
  auto surrogate = [&](double s_a, double s_b) { return f_of(c, s_a, s_b) - tan.at(c, s_a, s_b); };

  double s_a = v.quadratic_form(red.a);
  double s_b = v.quadratic_form(red.b);
  double value = surrogate(s_a, s_b);
  double gap = 0.0;
  int it = 0;

  if (v.dim() > 1) {
    HermitianMatrix grad(v.dim());
    for (; it < opts.fw_max_iter; ++it) {
      const double theta_a = c.k_a / (kLn2 * (c.k_a * s_a + c.c_a)) - c.rho / (kLn2 * tan.d_a);
      const double theta_b = c.k_b / (kLn2 * (c.k_b * s_b + c.c_b)) - c.rho / (kLn2 * tan.d_b);
      grad = HermitianMatrix(v.dim());
      grad.add_outer(red.a, theta_a);
      grad.add_outer(red.b, theta_b);
      const auto top = cxla::top_eigpair(grad);

      gap = t * top.value - (theta_a * s_a + theta_b * s_b);
      if (gap <= opts.fw_gap_tol * (1.0 + std::abs(value))) break;

      const double sa_vertex = t * std::norm(cxla::dot(red.a, top.vector));
      const double sb_vertex = t * std::norm(cxla::dot(red.b, top.vector));
      auto along = [&](double gamma) {
        return surrogate(s_a + gamma * (sa_vertex - s_a), s_b + gamma * (sb_vertex - s_b));
      };
      double gamma = golden_max(along, 0.0, 1.0, opts.line_tol);
      if (along(1.0) >= along(gamma)) gamma = 1.0;
      if (!(along(gamma) > value)) break;

      v *= (1.0 - gamma);
      v.add_outer(top.vector, gamma * t);
      s_a = v.quadratic_form(red.a);
      s_b = v.quadratic_form(red.b);
      value = surrogate(s_a, s_b);
    }
  }

  SubproblemResult out;
  out.w = HermitianMatrix::congruence(red.basis, v);
  out.surrogate = value;
  out.gap = gap;
  out.iterations = it;
  return out;
}

}  // namespace

double objective_f(const HermitianMatrix& w, const DcContext& ctx) {
  check_ctx(w, ctx);
  return f_of(coeffs(ctx), w.quadratic_form(ctx.h_ra), w.quadratic_form(ctx.h_rb));
}

double objective_g(const HermitianMatrix& w, const DcContext& ctx) {
  check_ctx(w, ctx);
  return g_of(coeffs(ctx), w.quadratic_form(ctx.h_ra), w.quadratic_form(ctx.h_rb));
}

double objective_F(const HermitianMatrix& w, const DcContext& ctx) {
  check_ctx(w, ctx);
  const Coeffs c = coeffs(ctx);
  const double s_a = w.quadratic_form(ctx.h_ra);
  const double s_b = w.quadratic_form(ctx.h_rb);
  return f_of(c, s_a, s_b) - g_of(c, s_a, s_b);
}

HermitianMatrix grad_g(const HermitianMatrix& w_k, const DcContext& ctx) {
  check_ctx(w_k, ctx);
  const Coeffs c = coeffs(ctx);
  const Tangent tan = tangent(c, w_k.quadratic_form(ctx.h_ra), w_k.quadratic_form(ctx.h_rb));
  HermitianMatrix grad(w_k.dim());
  grad.add_outer(ctx.h_ra, c.rho / (kLn2 * tan.d_a));
  grad.add_outer(ctx.h_rb, c.rho / (kLn2 * tan.d_b));
  return grad;
}

AffineFunctional linearize_g(const HermitianMatrix& w_k, const DcContext& ctx) {
  AffineFunctional lin;
  lin.gradient = grad_g(w_k, ctx);
  lin.offset = objective_g(w_k, ctx) - lin.gradient.inner(w_k);
  return lin;
}

double linearize_g(const HermitianMatrix& w, const HermitianMatrix& w_k, const DcContext& ctx) {
  check_ctx(w, ctx);
  check_ctx(w_k, ctx);
  const Coeffs c = coeffs(ctx);
  const Tangent tan = tangent(c, w_k.quadratic_form(ctx.h_ra), w_k.quadratic_form(ctx.h_rb));
  return tan.at(c, w.quadratic_form(ctx.h_ra), w.quadratic_form(ctx.h_rb));
}

std::vector<CVector> zf_basis(const DcConstraints& cons, std::size_t m_t) {
  if (!cons.zf_direction.empty() && cons.zf_direction.dim() != m_t)
    throw ContractViolation("zf_basis: ZF direction dimension does not match m_t");
  if (cons.zf_direction.empty() || cons.zf_direction.norm2() == 0.0) {
    std::vector<CVector> eye;
    for (std::size_t i = 0; i < m_t; ++i) {
      CVector e(m_t);
      e[i] = 1.0;
      eye.push_back(std::move(e));
    }
    return eye;
  }
  return cxla::null_basis(cons.zf_direction);
}

Expected<SubproblemResult> solve_convex_subproblem(const HermitianMatrix& w_k, const DcContext& ctx,
                                                   const DcConstraints& cons, const DcOptions& opts) {
  check_ctx(w_k, ctx);
  if (!(cons.trace > 0.0)) return Infeasible{Binding::kTrace, "relay trace budget is not positive"};
  const Reduced red = reduce(ctx, cons);
  const Coeffs c = coeffs(ctx);
  const Tangent tan = tangent(c, w_k.quadratic_form(ctx.h_ra), w_k.quadratic_form(ctx.h_rb));
  HermitianMatrix v = normalize_trace(w_k.compress(red.basis), cons.trace);
  return conditional_gradient(std::move(v), red, c, tan, cons.trace, opts);
}

HermitianMatrix initial_point(const DcContext& ctx, const DcConstraints& cons) {
  const auto basis = zf_basis(cons, ctx.h_ra.dim());
  const CVector mid = 0.5 * (ctx.h_ra + ctx.h_rb);
  CVector coord(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) coord[i] = cxla::dot(basis[i], mid);
  HermitianMatrix v(basis.size());
  if (coord.norm() > 1e-12 * (1.0 + mid.norm())) {
    v.add_outer(coord, cons.trace / coord.norm2());
  } else {
    v = (cons.trace / static_cast<double>(basis.size())) * HermitianMatrix::identity(basis.size());
  }
  return HermitianMatrix::congruence(basis, v);
}

Expected<DcState> dc_optimize(const HermitianMatrix& w_init, const DcContext& ctx, const DcConstraints& cons,
                              const DcOptions& opts) {
  check_ctx(w_init, ctx);
  if (!(cons.trace > 0.0)) return Infeasible{Binding::kTrace, "relay trace budget is not positive"};
  const Reduced red = reduce(ctx, cons);
  const Coeffs c = coeffs(ctx);

  DcState st;
  HermitianMatrix v = normalize_trace(w_init.compress(red.basis), cons.trace);
  double s_a = v.quadratic_form(red.a);
  double s_b = v.quadratic_form(red.b);
  double value = f_of(c, s_a, s_b) - g_of(c, s_a, s_b);
  st.objective_trace.push_back(value);

  // Warm-started inner solves; V stays in reduced coordinates between them.
  for (st.k = 0; st.k < opts.dc_max_iter;) {
    const Tangent tan = tangent(c, s_a, s_b);
    const SubproblemResult sub = conditional_gradient(v, red, c, tan, cons.trace, opts);
    ++st.k;
    v = sub.w.compress(red.basis);
    const double next_a = v.quadratic_form(red.a);
    const double next_b = v.quadratic_form(red.b);
    const double next = f_of(c, next_a, next_b) - g_of(c, next_a, next_b);
    st.objective_trace.push_back(next);
    const double gain = next - value;
    s_a = next_a;
    s_b = next_b;
    value = next;
    if (gain < opts.dc_tol) break;
  }
  st.w_t_mat = HermitianMatrix::congruence(red.basis, v);
  return st;
}

Rank1Beam extract_rank1(const HermitianMatrix& w) {
  const auto d = cxla::eigh(w);
  Rank1Beam out;
  out.lambda1 = d.values.front();
  if (!(out.lambda1 > 0.0)) {
    out.zero = true;
    out.w_t = CVector(w.dim());
    return out;
  }
  out.w_t = d.vectors.front() * cxla::Complex(std::sqrt(out.lambda1));
  out.defect = d.values.size() > 1 ? std::max(0.0, d.values[1]) / out.lambda1 : 0.0;
  return out;
}

}  // namespace swipt::txdc
