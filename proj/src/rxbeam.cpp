// SPDX-License-Identifier: Apache-2.0
#include "swipt/rxbeam.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swipt::rxbeam {

namespace {

constexpr double kParallelTol = 1e-12;

struct Prepared {
  txdc::DcContext ctx;
  txdc::DcConstraints cons;
};

Prepared prepare(const CVector& w_r, const ChannelSet& ch, const SystemParams& sp, double rho, double p_a,
                 double p_b) {
  Prepared p;
  p.ctx.rho = rho;
  p.ctx.p_a = p_a;
  p.ctx.p_b = p_b;
  p.ctx.c_ra = std::norm(cxla::dot(w_r, ch.h_ar));
  p.ctx.c_rb = std::norm(cxla::dot(w_r, ch.h_br));
  p.ctx.h_ra = ch.h_ra;
  p.ctx.h_rb = ch.h_rb;
  p.ctx.g_aa = std::norm(ch.h_aa);
  p.ctx.g_bb = std::norm(ch.h_bb);
  p.cons.trace = sp.p_relay / (rho * (p_a * p.ctx.c_ra + p_b * p.ctx.c_rb + 1.0));
  p.cons.zf_direction = ch.h_rr.adjoint() * w_r;
  return p;
}

}  // namespace

AlphaGrid AlphaGrid::uniform(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ContractViolation("AlphaGrid: step must lie in (0,1]");
  const double count = 1.0 / step;
  const double rounded = std::round(count);
  if (std::abs(count - rounded) > 1e-9 * rounded) throw ContractViolation("AlphaGrid: 1/step must be an integer");
  AlphaGrid g;
  g.step = step;
  const int n = static_cast<int>(rounded);
  for (int i = 0; i <= n; ++i) g.values.push_back(static_cast<double>(i) / n);
  return g;
}

AlphaGrid AlphaGrid::single(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractViolation("AlphaGrid: alpha must lie in [0,1]");
  AlphaGrid g;
  g.step = 1.0;
  g.values = {alpha};
  return g;
}

ReceiveBeam wr_from_alpha(double alpha, const ChannelSet& ch) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ContractViolation("wr_from_alpha: alpha must lie in [0,1]");
  if (ch.h_ar.dim() != ch.h_br.dim()) throw ContractViolation("wr_from_alpha: h_ar and h_br dimensions differ");
  const double n_ar = ch.h_ar.norm();
  if (n_ar == 0.0 || ch.h_br.norm() == 0.0) throw DegenerateInput("wr_from_alpha: zero source-to-relay channel");

  const CVector par = cxla::project_onto(ch.h_ar, ch.h_br);
  const CVector perp = ch.h_ar - par;
  ReceiveBeam out;
  if (perp.norm() <= kParallelTol * n_ar) {
    out.w_r = par.normalized();
    out.degenerate = true;
    return out;
  }
  CVector u1;
  if (par.norm() <= kParallelTol * n_ar) {
    u1 = ch.h_br.normalized();
    out.degenerate = true;
  } else {
    u1 = par.normalized();
  }
  out.w_r = std::sqrt(alpha) * u1 + std::sqrt(1.0 - alpha) * perp.normalized();
  // u1 ⊥ u2 so the norm is one up to rounding; snap it.
  out.w_r = out.w_r.normalized();
  return out;
}

Expected<BeamSolution> solve_alpha(double alpha, const ChannelSet& ch, const SystemParams& sp, double rho,
                                   double p_a, double p_b, const BeamOptions& opts, const CVector* warm_w_t) {
  if (!(rho > 0.0)) throw ContractViolation("solve_alpha: rho must be positive");
  const ReceiveBeam rb = wr_from_alpha(alpha, ch);
  const Prepared prep = prepare(rb.w_r, ch, sp, rho, p_a, p_b);
  if (!(prep.cons.trace > 0.0)) return Infeasible{Binding::kTrace, "relay budget leaves no transmit power"};

  auto run = [&](const cxla::HermitianMatrix& w0) -> Expected<BeamSolution> {
    const auto st = txdc::dc_optimize(w0, prep.ctx, prep.cons, opts.dc);
    if (!st) return st.error();
    const txdc::Rank1Beam r1 = txdc::extract_rank1(st->w_t_mat);
    BeamSolution sol;
    sol.alpha = alpha;
    sol.w_r = rb.w_r;
    sol.w_t = r1.w_t;
    sol.relaxed_objective = st->objective_trace.back();
    sol.rank1_defect = r1.defect;
    sol.dc_iterations = st->k;
    sol.degenerate_wr = rb.degenerate;
    const model::OperatingPoint pt{sol.w_t, sol.w_r, rho, p_a, p_b};
    const auto rep = model::evaluate(pt, ch, sp);
    if (!rep.flags.relay_power) return Infeasible{Binding::kRelayPower, "extracted beam exceeds the relay budget"};
    if (!rep.flags.zero_forcing) return Infeasible{Binding::kTrace, "extracted beam violates zero forcing"};
    sol.sum_rate = rep.sum_rate;
    return sol;
  };

  auto best = run(txdc::initial_point(prep.ctx, prep.cons));
  if (warm_w_t != nullptr && warm_w_t->dim() == ch.h_ra.dim() && warm_w_t->norm2() > 0.0) {
    auto alt = run(cxla::HermitianMatrix::outer(*warm_w_t));
    if (alt && (!best || alt->sum_rate > best->sum_rate)) best = std::move(alt);
  }
  return best;
}

Expected<BeamSolution> alpha_search(const ChannelSet& ch, const SystemParams& sp, double rho, double p_a,
                                    double p_b, const AlphaGrid& grid, const BeamOptions& opts,
                                    const std::optional<WarmStart>& warm) {
  if (grid.values.empty()) throw ContractViolation("alpha_search: empty alpha grid");
  std::optional<BeamSolution> best;
  Infeasible last{Binding::kAllCandidates, "no alpha in the grid gives a feasible beam pair"};
  for (double alpha : grid.values) {
    const bool warm_here = warm && warm->alpha == alpha;
    auto sol = solve_alpha(alpha, ch, sp, rho, p_a, p_b, opts, warm_here ? &warm->w_t : nullptr);
    if (!sol) {
      last = sol.error();
      continue;
    }
    if (!best || sol->sum_rate > best->sum_rate) best = std::move(*sol);
  }
  // A warm-start α that is off the grid still gets its own solve.
  if (warm && std::find(grid.values.begin(), grid.values.end(), warm->alpha) == grid.values.end() &&
      warm->alpha >= 0.0 && warm->alpha <= 1.0) {
    auto sol = solve_alpha(warm->alpha, ch, sp, rho, p_a, p_b, opts, &warm->w_t);
    if (sol && (!best || sol->sum_rate > best->sum_rate)) best = std::move(*sol);
  }
  if (!best) return Infeasible{Binding::kAllCandidates, last.reason};
  double step = grid.step;
  for (int level = 0; level < opts.alpha_refine; ++level) {
    step *= 0.5;
    const double center = best->alpha;
    for (double alpha : {center - step, center + step}) {
      if (alpha < 0.0 || alpha > 1.0) continue;
      auto sol = solve_alpha(alpha, ch, sp, rho, p_a, p_b, opts);
      if (sol && sol->sum_rate > best->sum_rate) best = std::move(*sol);
    }
  }
  return *best;
}

Expected<BisectionTrace> bisection_rate(double alpha, const ChannelSet& ch, const SystemParams& sp, double rho,
                                        double p_a, double p_b, double eps, const BeamOptions& opts) {
  if (!(eps > 0.0)) throw ContractViolation("bisection_rate: eps must be positive");
  const auto sol = solve_alpha(alpha, ch, sp, rho, p_a, p_b, opts);
  if (!sol) return sol.error();

  // Upper end: the same beams with both source self-interference terms removed.
  ChannelSet clean = ch;
  clean.h_aa = 0.0;
  clean.h_bb = 0.0;
  const auto ub = solve_alpha(alpha, clean, sp, rho, p_a, p_b, opts);
  const double start_up = std::max(ub ? ub->sum_rate : 0.0, sol->sum_rate) + eps;

  // A target t is reachable iff the solved rate meets it.
  auto reachable = [&](double t) { return sol->sum_rate >= t; };
  BisectionTrace tr;
  tr.low = 0.0;
  tr.up = start_up;
  while (tr.up - tr.low > eps) {
    const double mid = 0.5 * (tr.low + tr.up);
    if (reachable(mid)) tr.low = mid;
    else tr.up = mid;
    ++tr.iterations;
  }
  tr.rate = tr.low;
  return tr;
}

}  // namespace swipt::rxbeam
