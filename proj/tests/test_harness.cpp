// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "swipt/harness.hpp"

using namespace swipt;
using namespace swipt::harness;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.m_t = c.m_r = 2;
  c.p_max_db = {0, 10, 20};
  c.q_min_dbm = {10};
  c.trials = 4;
  c.seed = 11;
  c.progress = false;
  c.threads = 1;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "swipt_test_harness";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("db conversion") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(-20.0) == doctest::Approx(0.01));
}

TEST_CASE("channel draws are deterministic and differ across trials") {
  const ExperimentConfig cfg = small_config();
  const model::SystemParams sp = system_params(cfg, 10.0, 10.0);
  const model::ChannelSet a = gen_channels(5, 3, sp);
  const model::ChannelSet b = gen_channels(5, 3, sp);
  CHECK(a.h_ar == b.h_ar);
  CHECK(a.h_rb == b.h_rb);
  CHECK(a.h_rr == b.h_rr);
  CHECK(a.h_aa == b.h_aa);
  const model::ChannelSet c = gen_channels(5, 4, sp);
  CHECK_FALSE(a.h_ar == c.h_ar);
  CHECK_FALSE(a.h_rr == c.h_rr);
  const model::ChannelSet d = gen_channels(6, 3, sp);
  CHECK_FALSE(a.h_ar == d.h_ar);
}

TEST_CASE("SI sweeps share one realization up to scale") {
  ExperimentConfig cfg = small_config();
  cfg.experiment = ExperimentKind::kSumrateVsRsi;
  cfg.rsi_db = {-20, 0};
  cfg.p_max_db = {10};
  const auto lo = gen_channels(2, 1, system_params(cfg, -20.0, 10.0));
  const auto hi = gen_channels(2, 1, system_params(cfg, 0.0, 10.0));
  CHECK(lo.h_ar == hi.h_ar);
  CHECK(std::abs(hi.h_rr(1, 0) - lo.h_rr(1, 0) * 10.0) <= 1e-12 * std::abs(hi.h_rr(1, 0)));
  CHECK(std::abs(hi.h_aa - lo.h_aa * 10.0) <= 1e-12 * std::abs(hi.h_aa));
}

TEST_CASE("empirical coefficient variances match the configured ones") {
  ExperimentConfig cfg = small_config();
  cfg.rsi_db = {-13};
  const model::SystemParams sp = system_params(cfg, 10.0, 10.0);
  const double s2 = db_to_linear(-13.0);
  const int n = 100000;
  double v_link = 0.0, v_loop = 0.0, v_src = 0.0;
  std::complex<double> mean = 0.0;
  for (int t = 0; t < n; ++t) {
    const auto ch = gen_channels(9, static_cast<std::uint64_t>(t), sp);
    v_link += std::norm(ch.h_ra[1]);
    v_loop += std::norm(ch.h_rr(0, 1));
    v_src += std::norm(ch.h_bb);
    mean += ch.h_ar[0];
  }
  CHECK(std::abs(v_link / n - 1.0) <= 0.02);
  CHECK(std::abs(v_loop / n / s2 - 1.0) <= 0.02);
  CHECK(std::abs(v_src / n / s2 - 1.0) <= 0.02);
  CHECK(std::abs(mean / double(n)) <= 0.02);
}

TEST_CASE("config parsing") {
  const ExperimentConfig d = config_from_json("{}");
  CHECK(d.trials == 500);
  CHECK(d.p_relay_db == -5.0);
  CHECK(d.rsi_db == std::vector<double>{-40});

  ExperimentConfig c = small_config();
  c.experiment = ExperimentKind::kSumrateVsRsi;
  c.rsi_db = {-20, -10, 0};
  c.p_max_db = {10};
  c.solver.alpha_step = 0.1;
  c.solver.one_way_starts = false;
  c.solver.beam.alpha_refine = 1;
  c.format = OutputFormat::kJson;
  const std::string text = config_to_json(c);
  const ExperimentConfig r = config_from_json(text);
  CHECK(config_to_json(r) == text);
  CHECK(r.experiment == ExperimentKind::kSumrateVsRsi);
  CHECK(r.rsi_db == c.rsi_db);
  CHECK(r.solver.alpha_step == 0.1);
  CHECK_FALSE(r.solver.one_way_starts);
  CHECK(r.solver.beam.alpha_refine == 1);

  CHECK_THROWS_AS(config_from_json(R"({"trails": 3})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"trials": 0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"trials": "many"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"p_max_db": []})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"alpha_step": 0.3})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"experiment": "sideways"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json("[1, 2"), ConfigError);
}

TEST_CASE("one trial at one point gives one record per scheme") {
  ExperimentConfig c = small_config();
  c.p_max_db = {10};
  c.trials = 1;
  const ExperimentResult r = compute_experiment(c);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].scheme == Scheme::kJoint);
  CHECK(r.records[1].scheme == Scheme::kRelayOnly);
  CHECK(r.records[0].sweep_value == 10.0);
  CHECK(r.records[0].curve_value == 10.0);
  REQUIRE(r.summary.size() == 2);
  CHECK(r.summary[0].n_trials == 1);

  const std::string csv = to_csv(r.records);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.rfind("seed,trial,sweep_value,curve_value,scheme,sum_rate,", 0) == 0);
}

TEST_CASE("serialized records round-trip and stay ASCII") {
  const ExperimentResult r = compute_experiment(small_config());
  REQUIRE(r.records.size() == 2 * 3 * 4);
  CHECK(records_from_json(to_json(r.records)) == r.records);
  for (const std::string& s : {to_csv(r.records), to_json(r.records), summary_to_csv(r.summary)}) {
    CHECK(std::all_of(s.begin(), s.end(), [](char ch) { return static_cast<unsigned char>(ch) < 128; }));
    CHECK(s.find('\r') == std::string::npos);
  }
  CHECK_THROWS_AS(records_from_json("[{\"seed\": 1}]"), ConfigError);
}

TEST_CASE("summary matches a recomputation from the records") {
  const ExperimentResult r = compute_experiment(small_config());
  std::map<std::tuple<double, double, int>, std::tuple<int, int, double>> acc;
  for (const TrialRecord& rec : r.records) {
    auto& [n, f, s] = acc[{rec.sweep_value, rec.curve_value, static_cast<int>(rec.scheme)}];
    ++n;
    if (rec.feasible) {
      ++f;
      s += rec.sum_rate;
    }
  }
  REQUIRE(acc.size() == r.summary.size());
  for (const SummaryRow& row : r.summary) {
    const auto [n, f, s] = acc.at({row.sweep_value, row.curve_value, static_cast<int>(row.scheme)});
    CHECK(row.n_trials == n);
    CHECK(row.n_feasible == f);
    CHECK(row.feasibility_ratio == doctest::Approx(double(f) / n));
    if (f > 0) CHECK(std::abs(row.mean_sum_rate - s / f) <= 1e-9);
    CHECK(std::abs(row.mean_sum_rate_outage - s / n) <= 1e-9);
  }
}

TEST_CASE("per-trial properties of the sweep") {
  ExperimentConfig c = small_config();
  c.p_max_db = {-10, 0, 5, 10, 20};
  c.trials = 6;
  c.m_t = c.m_r = 3;
  const ExperimentResult r = compute_experiment(c);
  CHECK(r.joint_below_baseline == 0);
  std::map<int, std::vector<const TrialRecord*>> joint_by_trial;
  for (std::size_t i = 0; i + 1 < r.records.size(); i += 2) {
    const TrialRecord& j = r.records[i];
    const TrialRecord& b = r.records[i + 1];
    REQUIRE(j.scheme == Scheme::kJoint);
    REQUIRE(b.scheme == Scheme::kRelayOnly);
    REQUIRE(j.trial == b.trial);
    if (b.feasible) {
      CHECK(j.feasible);
      CHECK(j.sum_rate >= b.sum_rate - 1e-9);
    }
    joint_by_trial[j.trial].push_back(&j);
  }
  // Records are sorted by P_max, so each trial's list is ascending in it.
  for (const auto& [trial, recs] : joint_by_trial) {
    for (std::size_t k = 1; k < recs.size(); ++k) {
      if (!recs[k - 1]->feasible) continue;
      CHECK(recs[k]->feasible);
      CHECK(recs[k]->sum_rate >= recs[k - 1]->sum_rate - 1e-9);
    }
  }
}

TEST_CASE("the threaded runner matches the serial one") {
  ExperimentConfig c = small_config();
  const ExperimentResult a = compute_experiment(c);
  c.threads = 3;
  const ExperimentResult b = compute_experiment(c);
  CHECK(a.records == b.records);
  CHECK(to_csv(a.records) == to_csv(b.records));
}

TEST_CASE("files: reruns are byte-identical and the summary sits alongside") {
  ExperimentConfig c = small_config();
  const auto p1 = scratch("a.csv");
  const auto p2 = scratch("b.csv");
  c.output = p1.string();
  run_experiment(c);
  c.output = p2.string();
  run_experiment(c);
  const std::string s1 = slurp(p1);
  CHECK_FALSE(s1.empty());
  CHECK(s1 == slurp(p2));
  CHECK(std::filesystem::exists(scratch("a.csv.summary")));
  CHECK(slurp(scratch("a.csv.summary")) == slurp(scratch("b.csv.summary")));

  c.format = OutputFormat::kJson;
  c.output = scratch("a.json").string();
  const ExperimentResult r = run_experiment(c);
  CHECK(records_from_json(slurp(scratch("a.json"))) == r.records);
}

TEST_CASE("an unwritable output path fails before any solve") {
  ExperimentConfig c = small_config();
  c.trials = 100000;  // would take far too long if it started solving
  c.output = "/nonexistent-dir/x/out.csv";
  try {
    run_experiment(c);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x/out.csv") != std::string::npos);
  }
}

TEST_CASE("returned operating points line up with the records") {
  const ExperimentConfig c = small_config();
  std::vector<model::OperatingPoint> pts;
  const ExperimentResult r = compute_experiment(c, &pts);
  REQUIRE(pts.size() == r.records.size());
  CHECK(compute_experiment(c).records == r.records);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const TrialRecord& rec = r.records[i];
    if (!rec.feasible) continue;
    const auto sp = system_params(c, rec.sweep_value, rec.curve_value);
    const auto rep = model::evaluate(pts[i], gen_channels(c.seed, static_cast<std::uint64_t>(rec.trial), sp), sp);
    CHECK(rep.feasible);
    CHECK(quantize(rep.sum_rate) == rec.sum_rate);
    CHECK(quantize(pts[i].p_a) == rec.p_a);
  }
}
