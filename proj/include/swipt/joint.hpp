// SPDX-License-Identifier: Apache-2.0
//
// Alternating optimization: beams, then ρ, then source powers, until the
// evaluated sum-rate settles. The relay-only baseline skips the power stage.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "swipt/model.hpp"
#include "swipt/rxbeam.hpp"
#include "swipt/scalaropt.hpp"

namespace swipt::joint {

using model::ChannelSet;
using model::OperatingPoint;
using model::PerformanceReport;
using model::SystemParams;

enum class Status { kConverged, kMaxIters, kInfeasible };
const char* to_string(Status s);

struct JointOptions {
  double alpha_step = 0.05;
  rxbeam::BeamOptions beam{.dc = {}, .alpha_refine = 3};
  scalaropt::ScalarOptions scalar{.rescale_to_budget = true, .refit_rho = true};
  double outer_tol = 1e-4;  // bits
  int max_outer = 50;
  double rho_init = 0.5;
  /// Also start the joint alternation from (P_max, 0) and (0, P_max).
  bool one_way_starts = true;
};

struct JointResult {
  OperatingPoint point;
  PerformanceReport report;
  int outer_iters = 0;
  std::vector<double> rate_trace;  // evaluated sum-rate after each outer iteration
  Status status = Status::kInfeasible;
  bool stopped_infeasible = false;  // a later stage lost feasibility; point is the last feasible one
  std::string reason;               // set when status is infeasible or stopped_infeasible
  double alpha = 0.0;
  double rank1_defect = 0.0;
  double relaxed_objective = 0.0;  // F of the relaxed W_t behind the returned beam
  double extract_gap = 0.0;        // |relaxed F − evaluated rate of the extracted beam| at that stage
  int seed_index = -1;  // which seed produced the result; -1 is one of the built-in starts
};

/// An extra starting point for the alternation, typically the solution of a
/// neighbouring sweep point or of the other scheme.
struct Seed {
  OperatingPoint point;
  double alpha = 0.0;
};

Seed seed_from(const JointResult& r);

/// Algorithm start: ρ = rho_init, P_A = P_B = p_max; then beams, ρ, powers
/// until the sum-rate settles. The one-way starts and every seed (powers
/// clipped to p_max) are also run, and the best feasible result is returned.
JointResult joint_optimize(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts = {},
                           std::span<const Seed> seeds = {});

/// Same, seeded with the relay-only solution, so the joint scheme never
/// reports less than the baseline.
JointResult joint_optimize(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts,
                           const JointResult& baseline, std::span<const Seed> seeds = {});

/// P_A = P_B = p_max throughout; beams and ρ only. Seeds contribute their
/// beams and ρ.
JointResult relay_only_optimize(const ChannelSet& ch, const SystemParams& sp, const JointOptions& opts = {},
                                std::span<const Seed> seeds = {});

}  // namespace swipt::joint
