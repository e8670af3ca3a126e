// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <utility>

#include "support.hpp"
#include "swipt/model.hpp"
#include "swipt/rxbeam.hpp"

using namespace swipt;
using namespace swipt::rxbeam;
using swipt::testing::Rng;

namespace {

struct Instance {
  model::ChannelSet ch;
  model::SystemParams sp;
  double rho, p_a, p_b;
};

Instance make_instance(Rng& rng, int m) {
  Instance in;
  const double s2 = std::pow(10.0, rng.uniform(-4.0, -1.0));
  in.ch = rng.channels(m, m, s2);
  in.sp = testing::params(m, m, std::pow(10.0, rng.uniform(0.0, 2.0)), std::pow(10.0, -0.5), 0.0, s2);
  in.rho = rng.uniform(0.2, 0.9);
  in.p_a = rng.uniform(0.2, 1.0) * in.sp.p_max;
  in.p_b = rng.uniform(0.2, 1.0) * in.sp.p_max;
  return in;
}

model::ChannelSet swapped(const model::ChannelSet& ch) {
  model::ChannelSet s = ch;
  std::swap(s.h_ar, s.h_br);
  std::swap(s.h_ra, s.h_rb);
  std::swap(s.h_aa, s.h_bb);
  return s;
}

}  // namespace

TEST_CASE("alpha grids") {
  const AlphaGrid g = AlphaGrid::uniform(0.05);
  REQUIRE(g.values.size() == 21);
  CHECK(g.values.front() == 0.0);
  CHECK(g.values.back() == 1.0);
  for (std::size_t i = 1; i < g.values.size(); ++i)
    CHECK(g.values[i] - g.values[i - 1] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK_THROWS_AS(AlphaGrid::uniform(0.3), ContractViolation);
  CHECK_THROWS_AS(AlphaGrid::uniform(0.0), ContractViolation);
  CHECK_THROWS_AS(AlphaGrid::single(1.5), ContractViolation);
}

TEST_CASE("receive beam endpoints and norm") {
  Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    const model::ChannelSet ch = rng.channels(3, 2 + i % 5, 0.1);
    const CVector u1 = cxla::project_onto(ch.h_ar, ch.h_br).normalized();

    const ReceiveBeam one = wr_from_alpha(1.0, ch);
    CHECK_FALSE(one.degenerate);
    CHECK(std::abs(std::abs(cxla::dot(u1, one.w_r)) - 1.0) <= 1e-10);

    const ReceiveBeam zero = wr_from_alpha(0.0, ch);
    CHECK(std::abs(cxla::dot(zero.w_r, ch.h_br)) <= 1e-10 * ch.h_br.norm());

    for (int k = 0; k <= 100; ++k) CHECK(std::abs(wr_from_alpha(k / 100.0, ch).w_r.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("degenerate receive channels are flagged") {
  Rng rng(52);
  model::ChannelSet ch = rng.channels(2, 3, 0.1);
  ch.h_br = ch.h_ar * cxla::Complex(0.0, 2.0);
  const ReceiveBeam par = wr_from_alpha(0.3, ch);
  CHECK(par.degenerate);
  CHECK(std::abs(par.w_r.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(cxla::dot(par.w_r, ch.h_ar.normalized())) - 1.0) <= 1e-12);

  ch.h_ar = CVector{1.0, 0.0, 0.0};
  ch.h_br = CVector{0.0, 1.0, 0.0};
  const ReceiveBeam orth = wr_from_alpha(0.25, ch);
  CHECK(orth.degenerate);
  CHECK(std::abs(orth.w_r.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(cxla::dot(ch.h_br, orth.w_r)) == doctest::Approx(0.5));

  CHECK_THROWS_AS(wr_from_alpha(-0.1, ch), ContractViolation);
  ch.h_br = CVector(3);
  CHECK_THROWS_AS(wr_from_alpha(0.5, ch), DegenerateInput);
}

TEST_CASE("singleton grid returns its alpha") {
  Rng rng(53);
  const Instance in = make_instance(rng, 3);
  const auto sol = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, AlphaGrid::single(0.35));
  REQUIRE(sol);
  CHECK(sol->alpha == 0.35);
  const auto direct = solve_alpha(0.35, in.ch, in.sp, in.rho, in.p_a, in.p_b);
  REQUIRE(direct);
  CHECK(sol->sum_rate == direct->sum_rate);
}

TEST_CASE("returned beams are feasible and the rate is the evaluated one") {
  Rng rng(54);
  const AlphaGrid grid = AlphaGrid::uniform(0.1);
  for (int i = 0; i < 30; ++i) {
    const Instance in = make_instance(rng, 2 + i % 3);
    const auto sol = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, grid);
    REQUIRE(sol);
    const model::OperatingPoint pt{sol->w_t, sol->w_r, in.rho, in.p_a, in.p_b};
    const auto rep = model::evaluate(pt, in.ch, in.sp);
    CHECK(rep.zf_residual <= model::zf_tolerance(pt, in.ch));
    CHECK(rep.flags.relay_power);
    CHECK(rep.sum_rate == sol->sum_rate);
    CHECK(std::abs(sol->w_r.norm() - 1.0) <= 1e-9);
  }
}

TEST_CASE("halving the alpha step never loses rate") {
  Rng rng(55);
  for (int i = 0; i < 15; ++i) {
    const Instance in = make_instance(rng, 3);
    const auto coarse = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, AlphaGrid::uniform(0.1));
    const auto fine = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, AlphaGrid::uniform(0.05));
    REQUIRE(coarse);
    REQUIRE(fine);
    CHECK(fine->sum_rate >= coarse->sum_rate - 1e-9);
  }
}

TEST_CASE("symmetric channels: relabelling the sources preserves the rate") {
  Rng rng(56);
  for (int i = 0; i < 15; ++i) {
    Instance in = make_instance(rng, 3);
    in.ch.h_br = in.ch.h_ar;
    in.p_b = in.p_a;
    const AlphaGrid grid = AlphaGrid::uniform(0.1);
    const auto a = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, grid);
    const auto b = alpha_search(swapped(in.ch), in.sp, in.rho, in.p_b, in.p_a, grid);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(std::abs(a->sum_rate - b->sum_rate) <= 1e-6);
    // Every α gives the same w_r here, so the lowest one is reported.
    CHECK(a->alpha == 0.0);
    CHECK(a->degenerate_wr);
  }
}

TEST_CASE("a warm start never hurts") {
  Rng rng(57);
  for (int i = 0; i < 15; ++i) {
    const Instance in = make_instance(rng, 4);
    const AlphaGrid grid = AlphaGrid::uniform(0.25);
    const auto cold = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, grid);
    REQUIRE(cold);
    const WarmStart warm{0.3, rng.vec(4)};
    const auto hot = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, grid, {}, warm);
    REQUIRE(hot);
    CHECK(hot->sum_rate >= cold->sum_rate);
  }
}

TEST_CASE("bisection on the rate brackets the direct solve") {
  Rng rng(58);
  for (int i = 0; i < 15; ++i) {
    const Instance in = make_instance(rng, 3);
    const double alpha = rng.uniform(0.0, 1.0);
    const auto direct = solve_alpha(alpha, in.ch, in.sp, in.rho, in.p_a, in.p_b);
    const auto bis = bisection_rate(alpha, in.ch, in.sp, in.rho, in.p_a, in.p_b, 1e-3);
    REQUIRE(direct);
    REQUIRE(bis);
    CHECK(std::abs(bis->rate - direct->sum_rate) <= 1e-3);
    CHECK(bis->up - bis->low <= 1e-3);
    CHECK(bis->low <= direct->sum_rate);
    CHECK(bis->up > direct->sum_rate);
  }
}

TEST_CASE("search is deterministic") {
  Rng rng(59);
  const Instance in = make_instance(rng, 4);
  const auto a = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, AlphaGrid::uniform(0.05));
  const auto b = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, AlphaGrid::uniform(0.05));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->sum_rate == b->sum_rate);
  CHECK(a->alpha == b->alpha);
  CHECK(a->w_t == b->w_t);
}

TEST_CASE("local alpha refinement never loses and stays in range") {
  Rng rng(60);
  for (int i = 0; i < 15; ++i) {
    const Instance in = make_instance(rng, 3);
    const AlphaGrid grid = AlphaGrid::uniform(0.1);
    BeamOptions opts;
    opts.alpha_refine = 4;
    const auto plain = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, grid);
    const auto refined = alpha_search(in.ch, in.sp, in.rho, in.p_a, in.p_b, grid, opts);
    REQUIRE(plain);
    REQUIRE(refined);
    CHECK(refined->sum_rate >= plain->sum_rate);
    CHECK(refined->alpha >= 0.0);
    CHECK(refined->alpha <= 1.0);
    CHECK(std::abs(refined->alpha - plain->alpha) <= 0.1);
  }
}
