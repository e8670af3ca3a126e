// SPDX-License-Identifier: Apache-2.0
#include "swipt/model.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "swipt/status.hpp"

namespace swipt::model {

namespace {

// Scalars every evaluator is built from.
struct Gains {
  double c_ra;  // |w_r† h_AR|²
  double c_rb;  // |w_r† h_BR|²
  double c_at;  // |h_RA† w_t|²
  double c_bt;  // |h_RB† w_t|²
  double wt2;   // ‖w_t‖²
};

Gains gains(const OperatingPoint& pt, const ChannelSet& ch) {
  return {std::norm(cxla::dot(pt.w_r, ch.h_ar)), std::norm(cxla::dot(pt.w_r, ch.h_br)),
          std::norm(cxla::dot(ch.h_ra, pt.w_t)), std::norm(cxla::dot(ch.h_rb, pt.w_t)), pt.w_t.norm2()};
}

double sinr_a(const Gains& g, const OperatingPoint& pt, const ChannelSet& ch) {
  const double num = pt.rho * pt.p_b * g.c_rb * g.c_at;
  if (num == 0.0) return 0.0;
  return num / (pt.rho * g.c_at + pt.p_a * std::norm(ch.h_aa) + 1.0);
}

double sinr_b(const Gains& g, const OperatingPoint& pt, const ChannelSet& ch) {
  const double num = pt.rho * pt.p_a * g.c_ra * g.c_bt;
  if (num == 0.0) return 0.0;
  return num / (pt.rho * g.c_bt + pt.p_b * std::norm(ch.h_bb) + 1.0);
}

double relay_power(const Gains& g, const OperatingPoint& pt) {
  return pt.rho * g.wt2 * (pt.p_a * g.c_ra + pt.p_b * g.c_rb + 1.0);
}

double harvest(double e_bar, const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp) {
  return sp.beta * (1.0 - pt.rho) *
         (ch.h_ar.norm2() * pt.p_a + ch.h_br.norm2() * pt.p_b + e_bar + static_cast<double>(sp.m_t));
}

}  // namespace

void SystemParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ContractViolation(std::string("SystemParams: ") + name + " must be finite and >= 0");
  };
  nonneg(p_max, "p_max");
  nonneg(p_relay, "p_relay");
  nonneg(q_min, "q_min");
  nonneg(sigma2_a, "sigma2_a");
  nonneg(sigma2_b, "sigma2_b");
  nonneg(sigma2_r, "sigma2_r");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ContractViolation("SystemParams: beta must lie in [0,1]");
  if (m_t < 2 || m_r < 2) throw ContractViolation("SystemParams: relay needs at least two transmit and two receive antennas");
}

void ChannelSet::validate(const SystemParams& sp) const {
  const auto mt = static_cast<std::size_t>(sp.m_t);
  const auto mr = static_cast<std::size_t>(sp.m_r);
  if (h_ar.dim() != mr || h_br.dim() != mr) throw ContractViolation("ChannelSet: h_ar/h_br must have dimension m_r");
  if (h_ra.dim() != mt || h_rb.dim() != mt) throw ContractViolation("ChannelSet: h_ra/h_rb must have dimension m_t");
  if (h_rr.rows() != mr || h_rr.cols() != mt) throw ContractViolation("ChannelSet: h_rr must be m_r x m_t");
}

void check_dims(const OperatingPoint& pt, const ChannelSet& ch) {
  if (pt.w_t.dim() != ch.h_ra.dim()) throw ContractViolation("OperatingPoint: w_t dimension does not match m_t");
  if (pt.w_r.dim() != ch.h_ar.dim()) throw ContractViolation("OperatingPoint: w_r dimension does not match m_r");
}

double receive_gain(Node source, const OperatingPoint& pt, const ChannelSet& ch) {
  if (pt.w_r.dim() != ch.h_ar.dim()) throw ContractViolation("receive_gain: w_r dimension does not match m_r");
  return std::norm(cxla::dot(pt.w_r, source == Node::kA ? ch.h_ar : ch.h_br));
}

double sinr(Node node, const OperatingPoint& pt, const ChannelSet& ch) {
  check_dims(pt, ch);
  const Gains g = gains(pt, ch);
  return node == Node::kA ? sinr_a(g, pt, ch) : sinr_b(g, pt, ch);
}

double relay_power(const OperatingPoint& pt, const ChannelSet& ch) {
  check_dims(pt, ch);
  return relay_power(gains(pt, ch), pt);
}

double harvested_energy(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp) {
  check_dims(pt, ch);
  return harvest(relay_power(gains(pt, ch), pt), pt, ch, sp);
}

double zf_residual(const OperatingPoint& pt, const ChannelSet& ch) {
  check_dims(pt, ch);
  return std::abs(cxla::dot(pt.w_r, ch.h_rr * pt.w_t));
}

double zf_tolerance(const OperatingPoint& pt, const ChannelSet& ch) {
  return 1e-8 * (1.0 + ch.h_rr.frobenius_norm() * pt.w_t.norm());
}

PerformanceReport evaluate(const OperatingPoint& pt, const ChannelSet& ch, const SystemParams& sp) {
  check_dims(pt, ch);
  const Gains g = gains(pt, ch);

  PerformanceReport r;
  r.gamma_a = sinr_a(g, pt, ch);
  r.gamma_b = sinr_b(g, pt, ch);
  r.rate_a = std::log2(1.0 + r.gamma_a);
  r.rate_b = std::log2(1.0 + r.gamma_b);
  r.sum_rate = r.rate_a + r.rate_b;
  r.p_relay_used = relay_power(g, pt);
  r.q_harvest = harvest(r.p_relay_used, pt, ch, sp);
  r.zf_residual = std::abs(cxla::dot(pt.w_r, ch.h_rr * pt.w_t));

  r.flags.harvest = r.q_harvest >= sp.q_min * (1.0 - kConstraintRtol);
  r.flags.relay_power = r.p_relay_used <= sp.p_relay * (1.0 + kConstraintRtol);
  r.flags.power_a = pt.p_a <= sp.p_max * (1.0 + kConstraintRtol);
  r.flags.power_b = pt.p_b <= sp.p_max * (1.0 + kConstraintRtol);
  r.flags.zero_forcing = r.zf_residual <= zf_tolerance(pt, ch);
  r.feasible = r.flags.all();
  return r;
}

std::string describe(const PerformanceReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "gamma_a      %.9g\ngamma_b      %.9g\nrate_a       %.9g\nrate_b       %.9g\n"
                "sum_rate     %.9g\nq_harvest    %.9g\np_relay_used %.9g\nzf_residual  %.3e\n"
                "feasible     %s (harvest=%d relay=%d p_a=%d p_b=%d zf=%d)\n",
                r.gamma_a, r.gamma_b, r.rate_a, r.rate_b, r.sum_rate, r.q_harvest, r.p_relay_used,
                r.zf_residual, r.feasible ? "yes" : "no", r.flags.harvest, r.flags.relay_power, r.flags.power_a,
                r.flags.power_b, r.flags.zero_forcing);
  return buf;
}

}  // namespace swipt::model
