// SPDX-License-Identifier: Apache-2.0
#include "swipt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <tuple>
#include <vector>

#include "swipt/rxbeam.hpp"

namespace swipt::oracle {

namespace {

using cxla::Complex;
using cxla::CVector;

using Key = std::tuple<long long, int, int, int, int, int>;

struct Best {
  bool found = false;
  Key key{};
  double rate = 0.0;
  CVector w_t;
  CVector w_r;
  double rho = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
  GridIndex idx;
  std::int64_t evaluations = 0;
};

double linspace(double lo, double hi, int n, int i) {
  if (n == 1) return lo;
  if (i == n - 1) return hi;
  return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n - 1));
}

std::vector<CVector> directions(const std::vector<CVector>& basis, const model::ChannelSet& ch,
                                const OracleConfig& cfg, std::uint64_t salt) {
  const std::size_t k = basis.size();
  std::vector<CVector> out;
  if (k == 1) {
    out.push_back(basis[0]);
    return out;
  }
  auto lift = [&](const CVector& coord) {
    CVector v(basis[0].dim());
    for (std::size_t i = 0; i < k; ++i) v += coord[i] * basis[i];
    return v.normalized();
  };
  auto coords_of = [&](const CVector& x) {
    CVector c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = cxla::dot(basis[i], x);
    return c;
  };
  // Projected channel directions first, then random ones.
  for (const CVector& x : {ch.h_ra, ch.h_rb, ch.h_ra + ch.h_rb}) {
    const CVector c = coords_of(x);
    if (c.norm() > 1e-12) out.push_back(lift(c));
  }
  std::mt19937_64 gen(cfg.seed ^ (salt * 0x9E3779B97F4A7C15ULL));
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int s = 0; s < cfg.beam_angle_points; ++s) {
    CVector c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = Complex(n01(gen), n01(gen));
    out.push_back(lift(c));
  }
  return out;
}

void search_alpha(int ia, const model::ChannelSet& ch, const model::SystemParams& sp, const OracleConfig& cfg,
                  Best& best) {
  const double alpha = linspace(0.0, 1.0, cfg.alpha_points, ia);
  const CVector w_r = rxbeam::wr_from_alpha(alpha, ch).w_r;
  txdc::DcConstraints zf;
  zf.zf_direction = ch.h_rr.adjoint() * w_r;
  const std::vector<CVector> basis = txdc::zf_basis(zf, ch.h_ra.dim());
  const auto dirs = directions(basis, ch, cfg, static_cast<std::uint64_t>(ia) + 1);

  const double c_ra = std::norm(cxla::dot(w_r, ch.h_ar));
  const double c_rb = std::norm(cxla::dot(w_r, ch.h_br));
  const double g_aa = std::norm(ch.h_aa);
  const double g_bb = std::norm(ch.h_bb);
  const double n_ar = ch.h_ar.norm2();
  const double n_br = ch.h_br.norm2();
  const double q_need = sp.q_min * (1.0 - model::kConstraintRtol);

  best.evaluations = static_cast<std::int64_t>(dirs.size()) * cfg.rho_points * cfg.power_points * cfg.power_points;
  for (int ib = 0; ib < static_cast<int>(dirs.size()); ++ib) {
    const CVector& d = dirs[ib];
    const double s_a = std::norm(cxla::dot(ch.h_ra, d));
    const double s_b = std::norm(cxla::dot(ch.h_rb, d));
    for (int ipa = 0; ipa < cfg.power_points; ++ipa) {
      const double p_a = linspace(0.0, sp.p_max, cfg.power_points, ipa);
      for (int ipb = 0; ipb < cfg.power_points; ++ipb) {
        const double p_b = linspace(0.0, sp.p_max, cfg.power_points, ipb);
        const double k = p_a * c_ra + p_b * c_rb + 1.0;
        // ρ|c|² = P_R / k, so the SINRs do not depend on ρ.
        const double x_a = sp.p_relay * s_a / k;
        const double x_b = sp.p_relay * s_b / k;
        const double gam_a = p_b * c_rb * x_a / (x_a + p_a * g_aa + 1.0);
        const double gam_b = p_a * c_ra * x_b / (x_b + p_b * g_bb + 1.0);
        const double rate = std::log2(1.0 + gam_a) + std::log2(1.0 + gam_b);
        const double received = n_ar * p_a + n_br * p_b + sp.p_relay + static_cast<double>(sp.m_t);
        const long long r_key = std::llround(rate * 1e10);
        for (int ir = cfg.rho_points - 1; ir >= 0; --ir) {
          const double rho = linspace(cfg.rho_eps, 1.0 - cfg.rho_eps, cfg.rho_points, ir);
          if (sp.beta * (1.0 - rho) * received < q_need) continue;
          const Key key{r_key, ia, ir, ipa, ipb, ib};
          if (!best.found || key > best.key) {
            best.found = true;
            best.key = key;
            best.rate = rate;
            best.w_r = w_r;
            best.w_t = d * Complex(std::sqrt(sp.p_relay / (rho * k)));
            best.rho = rho;
            best.p_a = p_a;
            best.p_b = p_b;
            best.idx = {ia, ir, ipa, ipb, ib};
          }
          break;  // smaller ρ at the same (α, P, beam) has the same rate and a smaller key
        }
      }
    }
  }
}

}  // namespace

void OracleConfig::validate() const {
  if (alpha_points < 2 || rho_points < 2 || power_points < 2 || beam_angle_points < 2)
    throw ContractViolation("OracleConfig: every grid resolution must be >= 2");
  if (!(rho_eps > 0.0 && rho_eps < 0.5)) throw ContractViolation("OracleConfig: rho_eps must lie in (0, 0.5)");
  if (threads < 1) throw ContractViolation("OracleConfig: threads must be >= 1");
}

OracleResult brute_force(const model::ChannelSet& ch, const model::SystemParams& sp, const OracleConfig& cfg) {
  cfg.validate();
  sp.validate();
  ch.validate(sp);

  std::vector<Best> shard(static_cast<std::size_t>(cfg.alpha_points));
  auto work = [&](int first, int stride) {
    for (int ia = first; ia < cfg.alpha_points; ia += stride) search_alpha(ia, ch, sp, cfg, shard[ia]);
  };
  const int n_threads = std::min(cfg.threads, cfg.alpha_points);
  if (n_threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work, t, n_threads);
  }

  OracleResult out;
  const Best* best = nullptr;
  for (const Best& b : shard) {
    out.evaluations += b.evaluations;
    if (b.found && (best == nullptr || b.key > best->key)) best = &b;
  }

  if (best == nullptr) {
    out.result.status = joint::Status::kInfeasible;
    out.result.reason = "no grid point meets the harvest threshold";
    return out;
  }
  out.result.point = model::OperatingPoint{best->w_t, best->w_r, best->rho, best->p_a, best->p_b};
  out.result.report = model::evaluate(out.result.point, ch, sp);
  out.result.status = out.result.report.feasible ? joint::Status::kConverged : joint::Status::kInfeasible;
  if (!out.result.report.feasible) out.result.reason = "grid winner failed re-evaluation";
  out.result.rate_trace = {out.result.report.sum_rate};
  out.result.alpha = linspace(0.0, 1.0, cfg.alpha_points, best->idx.alpha);
  out.index = best->idx;
  return out;
}

}  // namespace swipt::oracle
