// SPDX-License-Identifier: Apache-2.0
//
// Random instances shared by the test binaries. Independent of the harness
// generator so tests do not depend on its draw order.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "swipt/cxla.hpp"
#include "swipt/model.hpp"

namespace swipt::testing {

using cxla::CMatrix;
using cxla::Complex;
using cxla::CVector;
using cxla::HermitianMatrix;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  Complex cn() { return {normal() * std::sqrt(0.5), normal() * std::sqrt(0.5)}; }

  CVector vec(std::size_t n) {
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cn();
    return v;
  }
  CMatrix mat(std::size_t r, std::size_t c) {
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = cn();
    return m;
  }
  HermitianMatrix hermitian(std::size_t n) {
    const CMatrix a = mat(n, n);
    return HermitianMatrix(0.5 * (a + a.adjoint()));
  }
  /// Random PSD matrix of the given rank with trace t.
  HermitianMatrix psd(std::size_t n, std::size_t rank, double t) {
    HermitianMatrix w(n);
    for (std::size_t k = 0; k < rank; ++k) w.add_outer(vec(n), uniform(0.1, 1.0));
    w *= t / w.trace();
    return w;
  }

  model::ChannelSet channels(int m_t, int m_r, double sigma2) {
    model::ChannelSet ch;
    ch.h_ar = vec(m_r);
    ch.h_br = vec(m_r);
    ch.h_ra = vec(m_t);
    ch.h_rb = vec(m_t);
    ch.h_rr = mat(m_r, m_t);
    const double s = std::sqrt(sigma2);
    for (std::size_t i = 0; i < ch.h_rr.rows(); ++i)
      for (std::size_t j = 0; j < ch.h_rr.cols(); ++j) ch.h_rr(i, j) *= s;
    ch.h_aa = s * cn();
    ch.h_bb = s * cn();
    return ch;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Random unit w_r and a zero-forcing w_t scaled so the relay output is
/// `fill` times the budget at the given ρ and powers.
inline model::OperatingPoint zf_point(Rng& rng, const model::ChannelSet& ch, const model::SystemParams& sp, double rho,
                                      double p_a, double p_b, double fill) {
  model::OperatingPoint pt;
  pt.w_r = rng.vec(ch.h_ar.dim()).normalized();
  const CVector b = ch.h_rr.adjoint() * pt.w_r;
  if (b.norm2() == 0.0) {
    pt.w_t = rng.vec(ch.h_ra.dim());
  } else {
    pt.w_t = CVector(ch.h_ra.dim());
    for (const auto& u : cxla::null_basis(b)) pt.w_t += u * rng.cn();
  }
  pt.rho = rho;
  pt.p_a = p_a;
  pt.p_b = p_b;
  const double used = model::relay_power(pt, ch);
  pt.w_t *= std::sqrt(fill * sp.p_relay / used);
  return pt;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

inline model::SystemParams params(int m_t, int m_r, double p_max, double p_relay, double q_min, double sigma2) {
  model::SystemParams sp;
  sp.p_max = p_max;
  sp.p_relay = p_relay;
  sp.q_min = q_min;
  sp.m_t = m_t;
  sp.m_r = m_r;
  sp.sigma2_a = sp.sigma2_b = sp.sigma2_r = sigma2;
  return sp;
}

}  // namespace swipt::testing
