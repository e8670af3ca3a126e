// SPDX-License-Identifier: Apache-2.0
#include "swipt/joint.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace swipt::joint {

namespace {

struct Start {
  OperatingPoint point;
  std::optional<rxbeam::WarmStart> warm;
};

JointResult alternate(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts, bool powers,
                      Start start) {
  sp.validate();
  ch.validate(sp);
  const rxbeam::AlphaGrid grid = rxbeam::AlphaGrid::uniform(opts.alpha_step);

  JointResult res;
  OperatingPoint pt = start.point;
  std::optional<rxbeam::WarmStart> warm = std::move(start.warm);
  bool have_best = false;
  double prev = 0.0;

  auto fail = [&](const Infeasible& e, int iter) {
    if (iter == 1 || !have_best) {
      res.status = Status::kInfeasible;
      res.reason = e.reason;
    } else {
      res.stopped_infeasible = true;
      res.reason = e.reason;
    }
  };

  res.status = Status::kMaxIters;
  for (int it = 1; it <= opts.max_outer; ++it) {
    res.outer_iters = it;

    const auto beams = rxbeam::alpha_search(ch, sp, pt.rho, pt.p_a, pt.p_b, grid, opts.beam, warm);
    if (!beams) {
      fail(beams.error(), it);
      break;
    }
    pt.w_r = beams->w_r;
    pt.w_t = beams->w_t;

    const auto rho = scalaropt::optimize_rho(pt, ch, sp, opts.scalar);
    if (!rho) {
      fail(rho.error(), it);
      break;
    }
    pt.rho = *rho;

    if (powers) {
      const auto pw = scalaropt::optimize_powers(pt, ch, sp, opts.scalar);
      if (!pw) {
        fail(pw.error(), it);
        break;
      }
      pt.p_a = pw->p_a;
      pt.p_b = pw->p_b;
      pt.rho = pw->rho;
      pt.w_t *= cxla::Complex(pw->beam_scale);
    }

    const PerformanceReport rep = model::evaluate(pt, ch, sp);
    if (!rep.feasible) {
      fail(Infeasible{Binding::kAllCandidates, "iterate failed re-evaluation: " + model::describe(rep)}, it);
      break;
    }
    res.rate_trace.push_back(rep.sum_rate);
    if (!have_best || rep.sum_rate > res.report.sum_rate) {
      have_best = true;
      res.point = pt;
      res.report = rep;
      res.alpha = beams->alpha;
      res.rank1_defect = beams->rank1_defect;
      res.relaxed_objective = beams->relaxed_objective;
      res.extract_gap = std::abs(beams->relaxed_objective - beams->sum_rate);
    }
    warm = rxbeam::WarmStart{beams->alpha, pt.w_t};
    if (it > 1 && std::abs(rep.sum_rate - prev) < opts.outer_tol) {
      res.status = Status::kConverged;
      break;
    }
    prev = rep.sum_rate;
  }
  return res;
}

Start cold_start(const JointOptions& opts, double p_a, double p_b) {
  Start s;
  s.point.rho = opts.rho_init;
  s.point.p_a = p_a;
  s.point.p_b = p_b;
  return s;
}

Start seeded_start(const Seed& seed, const SystemParams& sp, const JointOptions& opts, bool fixed_power) {
  Start s;
  s.point = seed.point;
  if (!(s.point.rho > 0.0 && s.point.rho < 1.0)) s.point.rho = opts.rho_init;
  s.point.p_a = fixed_power ? sp.p_max : std::clamp(s.point.p_a, 0.0, sp.p_max);
  s.point.p_b = fixed_power ? sp.p_max : std::clamp(s.point.p_b, 0.0, sp.p_max);
  if (seed.point.w_t.dim() == static_cast<std::size_t>(sp.m_t) && seed.point.w_t.norm2() > 0.0)
    s.warm = rxbeam::WarmStart{seed.alpha, seed.point.w_t};
  return s;
}

bool better(const JointResult& a, const JointResult& b) {
  if (a.status == Status::kInfeasible) return false;
  if (b.status == Status::kInfeasible) return true;
  return a.report.sum_rate > b.report.sum_rate;
}

JointResult best_of(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts, bool powers,
                    std::span<const Seed> seeds) {
  JointResult best = alternate(ch, sp, opts, powers, cold_start(opts, sp.p_max, sp.p_max));
  if (powers && opts.one_way_starts) {
    // One source silent: the beam stage then serves a single direction, which
    // the full-power start rarely reaches by alternation.
    for (const auto& [p_a, p_b] : {std::pair{sp.p_max, 0.0}, std::pair{0.0, sp.p_max}}) {
      JointResult r = alternate(ch, sp, opts, powers, cold_start(opts, p_a, p_b));
      if (better(r, best)) best = std::move(r);
    }
  }
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    JointResult r = alternate(ch, sp, opts, powers, seeded_start(seeds[i], sp, opts, !powers));
    if (better(r, best)) {
      r.seed_index = static_cast<int>(i);
      best = std::move(r);
    }
  }
  return best;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::kConverged: return "converged";
    case Status::kMaxIters: return "max_iters";
    case Status::kInfeasible: return "infeasible";
  }
  return "?";
}

Seed seed_from(const JointResult& r) { return Seed{r.point, r.alpha}; }

JointResult joint_optimize(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts,
                           std::span<const Seed> seeds) {
  return best_of(ch, sp, opts, true, seeds);
}

JointResult joint_optimize(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts,
                           const JointResult& baseline, std::span<const Seed> seeds) {
  std::vector<Seed> all(seeds.begin(), seeds.end());
  if (baseline.status != Status::kInfeasible) all.push_back(seed_from(baseline));
  return best_of(ch, sp, opts, true, all);
}

JointResult relay_only_optimize(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts,
                                std::span<const Seed> seeds) {
  return best_of(ch, sp, opts, false, seeds);
}

}  // namespace swipt::joint
