// SPDX-License-Identifier: Apache-2.0
//
// System parameters, channel realizations and the closed-form evaluators of
// the full-duplex two-way AF relay network with a power-splitting receiver.
// All powers are linear and normalized to unit noise per receive dimension.
#pragma once

#include <string>

#include "swipt/cxla.hpp"

namespace swipt::model {

using cxla::CMatrix;
using cxla::Complex;
using cxla::CVector;

struct SystemParams {
  double p_max = 1.0;    // per-source budget
  double p_relay = 1.0;  // relay output budget
  double q_min = 0.0;    // harvest threshold
  double beta = 1.0;     // energy conversion efficiency
  int m_t = 2;
  int m_r = 2;
  double sigma2_a = 0.0;  // residual SI variances
  double sigma2_b = 0.0;
  double sigma2_r = 0.0;

  /// Throws ContractViolation on negative powers, beta outside [0,1] or
  /// fewer than two relay antennas on either side.
  void validate() const;
};

struct ChannelSet {
  CVector h_ar;  // S_A -> relay receive, dim m_r
  CVector h_br;  // S_B -> relay receive, dim m_r
  CVector h_ra;  // relay transmit -> S_A, dim m_t
  CVector h_rb;  // relay transmit -> S_B, dim m_t
  CMatrix h_rr;  // relay loop, m_r x m_t
  Complex h_aa;  // source self-interference
  Complex h_bb;

  void validate(const SystemParams& sp) const;
};

struct OperatingPoint {
  CVector w_t;  // relay transmit beam, dim m_t
  CVector w_r;  // relay receive beam, dim m_r, unit norm
  double rho = 0.5;
  double p_a = 0.0;
  double p_b = 0.0;
};

enum class Node { kA, kB };

struct FeasibilityFlags {
  bool harvest = false;
  bool relay_power = false;
  bool power_a = false;
  bool power_b = false;
  bool zero_forcing = false;

  bool all() const { return harvest && relay_power && power_a && power_b && zero_forcing; }
};

struct PerformanceReport {
  double gamma_a = 0.0;
  double gamma_b = 0.0;
  double rate_a = 0.0;
  double rate_b = 0.0;
  double sum_rate = 0.0;
  double q_harvest = 0.0;
  double p_relay_used = 0.0;
  double zf_residual = 0.0;
  FeasibilityFlags flags;
  bool feasible = false;
};

/// Relative slack applied to the inequality constraints in `evaluate` so a
/// point placed exactly on a bound is not rejected by rounding.
inline constexpr double kConstraintRtol = 1e-9;

/// Effective receive gains C_rA = |w_r† h_AR|², C_rB = |w_r† h_BR|².
double receive_gain(Node source, const OperatingPoint& pt, const ChannelSet& ch);

double sinr(Node node, const OperatingPoint& pt, const ChannelSet& ch);
double relay_power(const OperatingPoint& pt, const ChannelSet& ch);
double harvested_energy(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp);
double zf_residual(const OperatingPoint& pt, const ChannelSet& ch);
/// 1e-8 · (1 + ‖H_RR‖_F ‖w_t‖)
double zf_tolerance(const OperatingPoint& pt, const ChannelSet& ch);

PerformanceReport evaluate(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp);

/// Checks vector dimensions of `pt` against `ch`; throws ContractViolation.
void check_dims(const OperatingPoint& pt, const ChannelSet& ch);

std::string describe(const PerformanceReport& r);

}  // namespace swipt::model
