// SPDX-License-Identifier: Apache-2.0
//
// Transmit-covariance optimization by DC programming.
//
// With W = w_t w_t† relaxed to a PSD matrix, the sum-rate splits as
// F(W) = f(W) − g(W), where both f and g are sums of logarithms of affine
// functions of W (hence both concave). Linearizing g at the current iterate
// gives a concave surrogate that touches F there and lies below it elsewhere,
// so maximizing the surrogate repeatedly produces a nondecreasing F.
//
// The zero-forcing constraint trace(W H_RR† w_r w_r† H_RR) = 0 is enforced
// structurally by W = B V B† with B an orthonormal basis of the null space of
// b = H_RR† w_r. The surrogate over {V ⪰ 0, trace V = T} is maximized by
// conditional gradient; the linear oracle is T times the top eigenvector of
// the reduced gradient.
#pragma once

#include <vector>

#include "swipt/cxla.hpp"
#include "swipt/status.hpp"

namespace swipt::txdc {

using cxla::CVector;
using cxla::HermitianMatrix;

/// Everything F depends on besides W (beams other than w_t, ρ, powers).
struct DcContext {
  double rho = 0.5;
  double p_a = 0.0;
  double p_b = 0.0;
  double c_ra = 0.0;  // |w_r† h_AR|²
  double c_rb = 0.0;  // |w_r† h_BR|²
  CVector h_ra;
  CVector h_rb;
  double g_aa = 0.0;  // |h_AA|²
  double g_bb = 0.0;  // |h_BB|²
};

struct DcConstraints {
  double trace = 0.0;    // T = P_R / (ρ (P_A C_rA + P_B C_rB + 1))
  CVector zf_direction;  // b = H_RR† w_r; all-zero means no ZF restriction
};

struct DcOptions {
  double dc_tol = 1e-6;
  int dc_max_iter = 100;
  double fw_gap_tol = 1e-6;
  int fw_max_iter = 500;
  double line_tol = 1e-9;
};

double objective_f(const HermitianMatrix& w, const DcContext& ctx);
double objective_g(const HermitianMatrix& w, const DcContext& ctx);
/// f − g, the sum-rate in bits at W.
double objective_F(const HermitianMatrix& w, const DcContext& ctx);

/// g_L(W) = offset + ⟨gradient, W⟩, the tangent plane of g at W_k.
struct AffineFunctional {
  HermitianMatrix gradient;
  double offset = 0.0;
  double operator()(const HermitianMatrix& w) const { return offset + gradient.inner(w); }
};

AffineFunctional linearize_g(const HermitianMatrix& w_k, const DcContext& ctx);
double linearize_g(const HermitianMatrix& w, const HermitianMatrix& w_k, const DcContext& ctx);
/// ∇g(W_k)
HermitianMatrix grad_g(const HermitianMatrix& w_k, const DcContext& ctx);

/// Orthonormal columns B spanning the zero-forcing feasible subspace.
std::vector<CVector> zf_basis(const DcConstraints& cons, std::size_t m_t);

struct SubproblemResult {
  HermitianMatrix w;
  double surrogate = 0.0;  // f − g_L at w
  double gap = 0.0;        // final conditional-gradient duality gap
  int iterations = 0;
};

/// argmax f(W) − g_L(W; W_k) over W = B V B†, V ⪰ 0, trace V = T.
Expected<SubproblemResult> solve_convex_subproblem(const HermitianMatrix& w_k, const DcContext& ctx,
                                                   const DcConstraints& cons, const DcOptions& opts = {});

struct DcState {
  HermitianMatrix w_t_mat;
  std::vector<double> objective_trace;  // F(W_0), F(W_1), ...
  int k = 0;
};

/// Feasible deterministic start: T ĥĥ† with ĥ the ZF-projected (h_RA + h_RB)/2,
/// or T B B†/(M_T − 1) when that projection vanishes.
HermitianMatrix initial_point(const DcContext& ctx, const DcConstraints& cons);

Expected<DcState> dc_optimize(const HermitianMatrix& w_init, const DcContext& ctx, const DcConstraints& cons,
                              const DcOptions& opts = {});

struct Rank1Beam {
  CVector w_t;
  double lambda1 = 0.0;
  double defect = 0.0;  // λ2 / λ1
  bool zero = false;    // λ1 = 0, beam is the zero vector
};

Rank1Beam extract_rank1(const HermitianMatrix& w);

}  // namespace swipt::txdc
