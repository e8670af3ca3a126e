// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference solver for small relays. Never used by the solvers.
//
// The transmit beam is written as w_t = c·d with d a unit vector in the
// zero-forcing subspace and |c|² pinned so the relay budget holds with
// equality (both the rates and the harvested energy increase with |c|).
// For two transmit antennas that subspace is one-dimensional, so only the
// (α, ρ, P_A, P_B) grid is approximate.
#pragma once

#include <cstdint>

#include "swipt/joint.hpp"

namespace swipt::oracle {

struct OracleConfig {
  int alpha_points = 41;       // linspace(0, 1)
  int rho_points = 101;        // linspace(eps, 1 − eps)
  int power_points = 51;       // linspace(0, p_max), per source
  int beam_angle_points = 64;  // random directions when the ZF subspace has dimension > 1
  double rho_eps = 1e-6;
  std::uint64_t seed = 1;  // direction sampler
  int threads = 1;

  void validate() const;
};

struct GridIndex {
  int alpha = -1;
  int rho = -1;
  int p_a = -1;
  int p_b = -1;
  int beam = -1;
};

struct OracleResult {
  joint::JointResult result;  // status converged on success, infeasible otherwise
  GridIndex index;
  std::int64_t evaluations = 0;
};

/// Maximum over the product grid; ties go to the lexicographically largest
/// (α, ρ, P_A, P_B, beam) index after rounding the rate to 1e-10 bits.
OracleResult brute_force(const model::ChannelSet& ch, const model::SystemParams& sp, const OracleConfig& cfg = {});

}  // namespace swipt::oracle
