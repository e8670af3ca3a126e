// SPDX-License-Identifier: Apache-2.0
//
// Receive-beam parametrization and the 1-D α search that wraps the DC
// transmit-beam solve.
#pragma once

#include <optional>
#include <vector>

#include "swipt/model.hpp"
#include "swipt/status.hpp"
#include "swipt/txdc.hpp"

namespace swipt::rxbeam {

using model::ChannelSet;
using model::SystemParams;
using cxla::CVector;

struct AlphaGrid {
  double step = 0.05;
  std::vector<double> values;

  /// {0, step, 2 step, ..., 1}; 1/step must be an integer.
  static AlphaGrid uniform(double step);
  static AlphaGrid single(double alpha);
};

struct ReceiveBeam {
  CVector w_r;
  bool degenerate = false;  // h_AR ∥ h_BR or h_AR ⊥ h_BR
};

/// w_r = √α u1 + √(1−α) u2 with u1 ∝ Π_{h_BR} h_AR and u2 ∝ Π⊥_{h_BR} h_AR.
ReceiveBeam wr_from_alpha(double alpha, const ChannelSet& ch);

struct BeamSolution {
  double alpha = 0.0;
  CVector w_r;
  CVector w_t;
  double sum_rate = 0.0;
  double relaxed_objective = 0.0;  // F at the final W_t, before extraction
  double rank1_defect = 0.0;       // λ2/λ1 of the final W_t
  int dc_iterations = 0;
  bool degenerate_wr = false;
};

/// Optional second DC start at one grid point, used by the alternating
/// outer loop to keep each stage monotone.
struct WarmStart {
  double alpha = 0.0;
  CVector w_t;
};

struct BeamOptions {
  txdc::DcOptions dc;
  /// Local refinement after the grid pass: level l tries the incumbent α ± step/2^l.
  int alpha_refine = 0;
};

/// One α: build w_r, reduce by ZF and run the DC solve; evaluates the
/// extracted beam through model::evaluate.
Expected<BeamSolution> solve_alpha(double alpha, const ChannelSet& ch, const SystemParams& sp, double rho,
                                   double p_a, double p_b, const BeamOptions& opts = {},
                                   const CVector* warm_w_t = nullptr);

/// Best α over the grid by evaluated sum-rate (lowest α wins ties), then
/// opts.alpha_refine levels of local refinement around the winner.
Expected<BeamSolution> alpha_search(const ChannelSet& ch, const SystemParams& sp, double rho, double p_a,
                                    double p_b, const AlphaGrid& grid, const BeamOptions& opts = {},
                                    const std::optional<WarmStart>& warm = std::nullopt);

struct BisectionTrace {
  double rate = 0.0;
  double low = 0.0;
  double up = 0.0;
  int iterations = 0;
};

/// Rate at one α found by bisection on a target rate between 0 and the
/// zero-RSI achievable rate, each probe asking whether the DC solution
/// reaches the target. Validation path; agrees with solve_alpha within eps.
Expected<BisectionTrace> bisection_rate(double alpha, const ChannelSet& ch, const SystemParams& sp, double rho,
                                        double p_a, double p_b, double eps = 1e-3, const BeamOptions& opts = {});

}  // namespace swipt::rxbeam
