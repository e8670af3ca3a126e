// SPDX-License-Identifier: Apache-2.0
#include "swipt/scalaropt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace swipt::scalaropt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool rho_feasible(OperatingPoint pt, double rho, const ChannelSet& ch, const SystemParams& sp) {
  pt.rho = rho;
  const auto r = model::evaluate(pt, ch, sp);
  return r.flags.harvest && r.flags.relay_power;
}

// Self-consistent harvest bound on the free power: Q is affine in it once Ē
// is expanded as ρ‖w_t‖²(P_A C_rA + P_B C_rB + 1).
double harvest_lower_bound_exact(Node free_node, const OperatingPoint& pt, const ChannelSet& ch,
                                 const SystemParams& sp) {
  const double scale = sp.beta * (1.0 - pt.rho);
  if (scale <= 0.0) return sp.q_min > 0.0 ? kInf : 0.0;
  const double wt2 = pt.w_t.norm2();
  const double c_ra = model::receive_gain(Node::kA, pt, ch);
  const double c_rb = model::receive_gain(Node::kB, pt, ch);
  const bool free_b = free_node == Node::kB;
  const double fixed_p = free_b ? pt.p_a : pt.p_b;
  const double h_fixed = free_b ? ch.h_ar.norm2() : ch.h_br.norm2();
  const double h_free = free_b ? ch.h_br.norm2() : ch.h_ar.norm2();
  const double c_fixed = free_b ? c_ra : c_rb;
  const double c_free = free_b ? c_rb : c_ra;
  const double slope = h_free + pt.rho * wt2 * c_free;
  const double need = sp.q_min / scale - h_fixed * fixed_p - pt.rho * wt2 * (fixed_p * c_fixed + 1.0) -
                      static_cast<double>(sp.m_t);
  if (slope <= 0.0) return need <= 0.0 ? 0.0 : kInf;
  return need / slope;
}

}  // namespace

RhoBounds rho_bounds(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp) {
  RhoBounds b;
  const double e_bar = model::relay_power(pt, ch);
  const double received = ch.h_ar.norm2() * pt.p_a + ch.h_br.norm2() * pt.p_b + e_bar + static_cast<double>(sp.m_t);
  const double harvest_scale = sp.beta * received;
  b.rho_l = harvest_scale > 0.0 ? 1.0 - sp.q_min / harvest_scale : (sp.q_min > 0.0 ? -kInf : 1.0);

  const double wt2 = pt.w_t.norm2();
  const double denom = wt2 * (pt.p_a * model::receive_gain(Node::kA, pt, ch) +
                              pt.p_b * model::receive_gain(Node::kB, pt, ch) + 1.0);
  if (denom > 0.0) {
    b.rho_m = sp.p_relay / denom;
  } else {
    b.rho_m = kInf;
    b.rho_m_unbounded = true;
  }
  return b;
}

Expected<double> optimize_rho(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp,
                              const ScalarOptions& opts) {
  model::check_dims(pt, ch);
  const RhoBounds b = rho_bounds(pt, ch, sp);
  const double limit = std::min(b.rho_l, b.rho_m);
  if (!(limit > 0.0)) {
    if (b.rho_l <= b.rho_m) return Infeasible{Binding::kHarvest, "harvest threshold unreachable for any rho > 0"};
    return Infeasible{Binding::kRelayPower, "relay budget exceeded for any rho > 0"};
  }

  const double lo_clip = opts.rho_eps;
  const double hi_clip = 1.0 - opts.rho_eps;
  const double hi = std::clamp(b.rho_m, lo_clip, hi_clip);
  if (rho_feasible(pt, hi, ch, sp)) return hi;

  // Harvest binds below the relay bound. Feasible ρ under the self-consistent
  // Ē form an interval, so bisect between a feasible point and `hi`.
  std::vector<double> starts = {std::clamp(limit, lo_clip, hi_clip), pt.rho, lo_clip};
  {
    // Vertex of Q(ρ) = β(1−ρ)(A + ρK).
    const double k = pt.w_t.norm2() * (pt.p_a * model::receive_gain(Node::kA, pt, ch) +
                                       pt.p_b * model::receive_gain(Node::kB, pt, ch) + 1.0);
    const double a = ch.h_ar.norm2() * pt.p_a + ch.h_br.norm2() * pt.p_b + static_cast<double>(sp.m_t);
    if (k > a) starts.push_back(std::clamp((k - a) / (2.0 * k), lo_clip, hi_clip));
  }
  double lo = -1.0;
  for (double s : starts) {
    if (s >= lo_clip && s <= hi && rho_feasible(pt, s, ch, sp)) {
      lo = s;
      break;
    }
  }
  if (lo < 0.0) return Infeasible{Binding::kHarvest, "no rho in (0,1) meets the harvest threshold"};

  double up = hi;
  for (int i = 0; i < opts.bisection_iters && up - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + up);
    if (rho_feasible(pt, mid, ch, sp)) lo = mid;
    else up = mid;
  }
  return lo;
}

PowerBounds power_bounds(Node free_node, const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp,
                         double e_bar) {
  const bool free_b = free_node == Node::kB;
  const double h_fixed = free_b ? ch.h_ar.norm2() : ch.h_br.norm2();
  const double h_free = free_b ? ch.h_br.norm2() : ch.h_ar.norm2();
  const double c_fixed = model::receive_gain(free_b ? Node::kA : Node::kB, pt, ch);
  const double c_free = model::receive_gain(free_node, pt, ch);
  const double wt2 = pt.w_t.norm2();

  PowerBounds b;
  const double scale = sp.beta * (1.0 - pt.rho);
  const double need = (scale > 0.0 ? sp.q_min / scale : (sp.q_min > 0.0 ? kInf : 0.0)) - h_fixed * sp.p_max -
                      e_bar - static_cast<double>(sp.m_t);
  b.p_bs = h_free > 0.0 ? need / h_free : (need <= 0.0 ? -kInf : kInf);

  const double room = sp.p_relay / pt.rho - sp.p_max * wt2 * c_fixed - wt2;
  const double per_unit = wt2 * c_free;
  if (per_unit > 0.0) {
    b.p_bm = room / per_unit;
  } else if (room >= 0.0) {
    b.p_bm = kInf;
    b.p_bm_unbounded = true;
  } else {
    b.p_bm = -kInf;
  }
  return b;
}

PowerBounds power_bounds(Node free_node, const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp) {
  return power_bounds(free_node, pt, ch, sp, model::relay_power(pt, ch));
}

Expected<PowerSolution> optimize_powers(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp,
                                        const ScalarOptions& opts) {
  model::check_dims(pt, ch);
  const double e_bar = model::relay_power(pt, ch);
  const int n = std::max(2, opts.power_grid_points);
  const double wt2 = pt.w_t.norm2();
  const double c_ra = model::receive_gain(Node::kA, pt, ch);
  const double c_rb = model::receive_gain(Node::kB, pt, ch);
  const bool rescale = opts.rescale_to_budget && wt2 > 0.0 && pt.rho > 0.0;

  bool found = false;
  PowerSolution best;
  OperatingPoint trial = pt;

  // Evaluates (p_a, p_b), keeps it when strictly better; returns the report.
  auto consider = [&](double p_a, double p_b, Node free_node) {
    trial.p_a = p_a;
    trial.p_b = p_b;
    trial.rho = pt.rho;
    double scale = 1.0;
    auto fit_beam = [&] {
      if (!rescale) return;
      scale = std::sqrt(sp.p_relay / (trial.rho * wt2 * (p_a * c_ra + p_b * c_rb + 1.0)));
      trial.w_t = pt.w_t * cxla::Complex(scale);
    };
    fit_beam();
    auto r = model::evaluate(trial, ch, sp);
    if (rescale && opts.refit_rho && !r.flags.harvest && sp.beta > 0.0) {
      // At the budget Ē = P_R, so the harvest bound on ρ is explicit.
      const double received =
          ch.h_ar.norm2() * p_a + ch.h_br.norm2() * p_b + sp.p_relay + static_cast<double>(sp.m_t);
      const double rho_h = 1.0 - sp.q_min / (sp.beta * received);
      if (rho_h >= opts.rho_eps && rho_h < pt.rho) {
        trial.rho = rho_h;
        fit_beam();
        r = model::evaluate(trial, ch, sp);
      }
    }
    if (r.feasible && (!found || r.sum_rate > best.sum_rate)) {
      found = true;
      best.p_a = p_a;
      best.p_b = p_b;
      best.sum_rate = r.sum_rate;
      best.free_node = free_node;
      best.beam_scale = scale;
      best.rho = trial.rho;
    }
    return r;
  };

  for (Node free_node : {Node::kB, Node::kA}) {
    const bool free_b = free_node == Node::kB;
    OperatingPoint edge = pt;
    (free_b ? edge.p_a : edge.p_b) = sp.p_max;

    double lo = 0.0;
    double hi = sp.p_max;
    double exact_lo = -1.0;
    if (!rescale) {
      const PowerBounds pb = power_bounds(free_node, edge, ch, sp, e_bar);
      exact_lo = harvest_lower_bound_exact(free_node, edge, ch, sp);
      lo = std::max(0.0, std::min(pb.p_bs, exact_lo));
      hi = std::min(pb.p_bm, sp.p_max);
    }

    std::vector<double> candidates;
    if (hi >= lo) {
      candidates.reserve(static_cast<std::size_t>(n) + 3);
      for (int i = 0; i < n - 1; ++i) candidates.push_back(lo + (hi - lo) * (static_cast<double>(i) / (n - 1)));
      candidates.push_back(hi);
      if (exact_lo > lo && exact_lo < hi) candidates.push_back(exact_lo);
    }
    // The incoming powers, when they sit on this edge.
    const double fixed_in = free_b ? pt.p_a : pt.p_b;
    const double free_in = free_b ? pt.p_b : pt.p_a;
    if (fixed_in == sp.p_max && free_in >= 0.0 && free_in <= sp.p_max) candidates.push_back(free_in);

    double endpoint = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double p_a = free_b ? sp.p_max : candidates[i];
      const double p_b = free_b ? candidates[i] : sp.p_max;
      const auto r = consider(p_a, p_b, free_node);
      if (r.feasible && hi >= lo && i == static_cast<std::size_t>(n) - 1) endpoint = r.sum_rate;
    }
    if (found && best.free_node == free_node) best.endpoint_sum_rate = endpoint;
  }

  if (opts.power_search == PowerSearch::kBox) {
    auto node_of = [&](double p_b) { return p_b == sp.p_max ? Node::kA : Node::kB; };
    if (pt.p_a >= 0.0 && pt.p_a <= sp.p_max && pt.p_b >= 0.0 && pt.p_b <= sp.p_max)
      consider(pt.p_a, pt.p_b, node_of(pt.p_b));
    const int m = std::max(2, opts.box_grid_points);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double p_b = sp.p_max * (static_cast<double>(j) / (m - 1));
        consider(sp.p_max * (static_cast<double>(i) / (m - 1)), p_b, node_of(p_b));
      }
    }
    // Compass search from the incumbent, halving the step down to 1e-9 p_max.
    if (found) {
      for (double step = sp.p_max / (m - 1); step > 1e-9 * sp.p_max; step *= 0.5) {
        bool moved = true;
        while (moved) {
          moved = false;
          const double a = best.p_a;
          const double b = best.p_b;
          for (const auto& [da, db] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
            const double na = std::clamp(a + da * step, 0.0, sp.p_max);
            const double nb = std::clamp(b + db * step, 0.0, sp.p_max);
            if (na == a && nb == b) continue;
            const double before = best.sum_rate;
            consider(na, nb, node_of(nb));
            if (best.sum_rate > before) {
              moved = true;
              break;
            }
          }
        }
      }
    }
  }

  if (!found) return Infeasible{Binding::kAllCandidates, "both power sub-problems have an empty feasible interval"};
  best.on_edge = best.p_a == sp.p_max || best.p_b == sp.p_max;
  return best;
}

}  // namespace swipt::scalaropt
