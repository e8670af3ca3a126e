// SPDX-License-Identifier: Apache-2.0
//
// Power-splitting ratio and source-power updates with the beams held fixed.
#pragma once

#include "swipt/model.hpp"
#include "swipt/status.hpp"

namespace swipt::scalaropt {

using model::ChannelSet;
using model::Node;
using model::OperatingPoint;
using model::SystemParams;

enum class PowerSearch {
  kEdges,  // only the two sub-problems with one source at p_max
  kBox,    // the edges plus a 2-D search of the whole box
};

struct ScalarOptions {
  double rho_eps = 1e-6;        // ρ is kept inside [rho_eps, 1 − rho_eps]
  int bisection_iters = 40;
  int power_grid_points = 401;  // per sub-problem
  PowerSearch power_search = PowerSearch::kBox;
  int box_grid_points = 51;     // per axis, before local refinement
  /// Rescale w_t for every power candidate so the relay budget holds with
  /// equality; PowerSolution::beam_scale reports the factor for the winner.
  bool rescale_to_budget = false;
  /// With rescale_to_budget: a candidate that misses the harvest threshold at
  /// the incoming ρ is retried at the largest lower ρ that meets it. The
  /// rates do not depend on ρ once the beam is rescaled, so only feasibility
  /// changes. PowerSolution::rho reports the ρ of the winner.
  bool refit_rho = false;
};

struct RhoBounds {
  double rho_l = 0.0;  // largest ρ meeting the harvest threshold (Ē frozen)
  double rho_m = 0.0;  // largest ρ meeting the relay budget
  bool rho_m_unbounded = false;
};

/// Closed-form bounds with Ē taken from the incoming iterate.
RhoBounds rho_bounds(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp);

/// Largest feasible ρ given the beams and powers in `pt`. The frozen-Ē bound
/// is re-checked with the self-consistent evaluator and refined by bisection.
Expected<double> optimize_rho(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp,
                              const ScalarOptions& opts = {});

struct PowerBounds {
  double p_bs = 0.0;  // smallest free power meeting the harvest threshold
  double p_bm = 0.0;  // largest free power meeting the relay budget
  bool p_bm_unbounded = false;
};

/// Bounds on the power of `free_node` when the other source transmits at
/// p_max. `e_bar` is the relay output energy held constant in the harvest
/// constraint.
PowerBounds power_bounds(Node free_node, const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp,
                         double e_bar);
/// Same, with Ē = relay_power(pt).
PowerBounds power_bounds(Node free_node, const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp);

struct PowerSolution {
  double p_a = 0.0;
  double p_b = 0.0;
  double sum_rate = 0.0;
  Node free_node = Node::kB;  // the source that is below p_max (or equal)
  bool on_edge = true;        // one of the powers equals p_max
  double beam_scale = 1.0;    // factor applied to w_t (1 unless rescale_to_budget)
  double rho = 0.0;           // ρ of the solution (the incoming one unless refit_rho moved it)
  /// Sum-rate of the "largest feasible free power" endpoint rule, for
  /// comparison with the grid maximizer; negative when the endpoint was
  /// infeasible.
  double endpoint_sum_rate = -1.0;
};

/// Best of the two sub-problems (P_A = p_max, P_B free) and
/// (P_B = p_max, P_A free), each searched on a grid over its feasible interval.
/// With PowerSearch::kBox the interior of [0, p_max]² is searched too, since
/// source self-interference can make both sources back off. The incoming
/// powers are always a candidate, so the sum-rate never drops.
Expected<PowerSolution> optimize_powers(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp,
                                        const ScalarOptions& opts = {});

}  // namespace swipt::scalaropt
