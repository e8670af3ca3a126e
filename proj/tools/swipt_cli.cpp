// SPDX-License-Identifier: Apache-2.0
//
// swipt solve | experiment | oracle-compare
//
// Exit codes: 0 ok, 2 config error, 3 infeasible single solve, 4 I/O error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "swipt/harness.hpp"
#include "swipt/joint.hpp"
#include "swipt/oracle.hpp"

namespace {

namespace h = swipt::harness;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw h::IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

h::ExperimentConfig load(const std::string& path) {
  return path.empty() ? h::ExperimentConfig{} : h::config_from_json(slurp(path));
}

void print_result(const char* label, const swipt::joint::JointResult& r) {
  std::printf("[%s] status %s, %d outer iterations\n", label, swipt::joint::to_string(r.status), r.outer_iters);
  if (r.status == swipt::joint::Status::kInfeasible) {
    std::printf("reason       %s\n", r.reason.c_str());
    return;
  }
  std::printf("rho          %.9g\np_a          %.9g\np_b          %.9g\nalpha        %.9g\n", r.point.rho,
              r.point.p_a, r.point.p_b, r.alpha);
  std::fputs(swipt::model::describe(r.report).c_str(), stdout);
}

int cmd_solve(const std::string& config, int trial) {
  h::ExperimentConfig cfg = load(config);
  const auto [sweep, curve] = h::sweep_points(cfg).front();
  const auto sp = h::system_params(cfg, sweep, curve);
  const auto ch = h::gen_channels(cfg.seed, static_cast<std::uint64_t>(trial), sp);
  const auto base = swipt::joint::relay_only_optimize(ch, sp, cfg.solver);
  const auto full = swipt::joint::joint_optimize(ch, sp, cfg.solver, base);
  std::printf("seed %llu trial %d: P_max %.9g, P_R %.9g, Q_min %.9g, RSI %.9g (linear)\n",
              static_cast<unsigned long long>(cfg.seed), trial, sp.p_max, sp.p_relay, sp.q_min, sp.sigma2_r);
  print_result("joint", full);
  print_result("relay-only", base);
  return full.status == swipt::joint::Status::kInfeasible ? kExitInfeasible : 0;
}

int cmd_experiment(const std::string& config, const std::string& output, int threads) {
  h::ExperimentConfig cfg = load(config);
  if (!output.empty()) cfg.output = output;
  if (threads > 0) cfg.threads = threads;
  const auto res = h::run_experiment(cfg);
  std::fputs(h::summary_to_csv(res.summary).c_str(), stdout);
  std::fprintf(stderr, "%zu records written to %s (+ .summary); %d solves stopped on a lost constraint\n",
               res.records.size(), cfg.output.c_str(), res.midrun_infeasible);
  return 0;
}

int cmd_oracle_compare(const std::string& config, int instances, int threads) {
  h::ExperimentConfig cfg = load(config);
  cfg.m_t = 2;
  cfg.m_r = 2;
  const auto [sweep, curve] = h::sweep_points(cfg).front();
  const auto sp = h::system_params(cfg, sweep, curve);
  swipt::oracle::OracleConfig ocfg;
  ocfg.threads = h::worker_count(threads);
  double max_gap = -1e300;
  int compared = 0;
  for (int t = 0; t < instances; ++t) {
    const auto ch = h::gen_channels(cfg.seed, static_cast<std::uint64_t>(t), sp);
    const auto base = swipt::joint::relay_only_optimize(ch, sp, cfg.solver);
    const auto full = swipt::joint::joint_optimize(ch, sp, cfg.solver, base);
    const auto orc = swipt::oracle::brute_force(ch, sp, ocfg);
    const bool jf = full.status != swipt::joint::Status::kInfeasible;
    const bool of = orc.result.status != swipt::joint::Status::kInfeasible;
    std::printf("instance %d: joint %s oracle %s (%lld evaluations)\n", t,
                jf ? std::to_string(full.report.sum_rate).c_str() : "infeasible",
                of ? std::to_string(orc.result.report.sum_rate).c_str() : "infeasible",
                static_cast<long long>(orc.evaluations));
    if (jf && of) {
      max_gap = std::max(max_gap, orc.result.report.sum_rate - full.report.sum_rate);
      ++compared;
    }
  }
  if (compared == 0) {
    std::printf("no instance feasible for both solvers\n");
    return 0;
  }
  std::printf("max gap (oracle - joint) over %d instances: %.6g bits\n", compared, max_gap);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beamforming, power-splitting and power allocation for a full-duplex two-way SWIPT relay"};
  app.require_subcommand(1);

  std::string config;
  std::string output;
  int trial = 0;
  int threads = 0;
  int instances = 10;

  auto* solve = app.add_subcommand("solve", "solve one seeded instance and print the performance report");
  solve->add_option("-c,--config", config, "JSON config (ExperimentConfig keys)")->check(CLI::ExistingFile);
  solve->add_option("-t,--trial", trial, "trial index for the channel draw")->check(CLI::NonNegativeNumber);

  auto* exp = app.add_subcommand("experiment", "run a Monte-Carlo sweep");
  exp->add_option("-c,--config", config, "JSON config (ExperimentConfig keys)")->check(CLI::ExistingFile);
  exp->add_option("-o,--output", output, "override the output path");
  exp->add_option("-j,--threads", threads, "worker count (SWIPT_THREADS caps it)")->check(CLI::NonNegativeNumber);

  auto* cmp = app.add_subcommand("oracle-compare", "joint solver against the brute-force oracle on 2x2 relays");
  cmp->add_option("-c,--config", config, "JSON config (first sweep point is used)")->check(CLI::ExistingFile);
  cmp->add_option("-n,--instances", instances, "number of seeded instances")->check(CLI::PositiveNumber);
  cmp->add_option("-j,--threads", threads, "oracle worker count")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) return cmd_solve(config, trial);
    if (*exp) return cmd_experiment(config, output, threads);
    if (*cmp) return cmd_oracle_compare(config, instances, threads);
  } catch (const h::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const swipt::ContractViolation& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const h::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  }
  return 0;
}
