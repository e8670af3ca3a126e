// SPDX-License-Identifier: Apache-2.0
//
// Seeded channel generation and the Monte-Carlo sweeps.
//
// Powers in configs are dB (P_max, P_R, RSI) or dBm (Q̄), all converted with
// x = 10^(x_dB/10) onto the unit-noise scale the model uses.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "swipt/joint.hpp"
#include "swipt/model.hpp"

namespace swipt::harness {

double db_to_linear(double db);

/// Bit-identical for equal (seed, trial). Draw order is h_AR, h_BR, h_RA,
/// h_RB, H_RR (row-major), h_AA, h_BB; every entry is CN(0,1) and the SI
/// channels are then scaled by √σ², so sweeps over σ² share realizations.
model::ChannelSet gen_channels(std::uint64_t seed, std::uint64_t trial, const model::SystemParams& sp);

enum class ExperimentKind { kSumrateVsPmax, kSumrateVsRsi, kSingle };
enum class OutputFormat { kCsv, kJson };

/// Raised for malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for unreadable or unwritable files; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kSumrateVsPmax;
  std::vector<double> p_max_db = {-10, -5, 0, 5, 10, 15, 20};
  std::vector<double> q_min_dbm = {10, 20};
  std::vector<double> rsi_db = {-40};
  double p_relay_db = -5.0;
  double beta = 1.0;
  int trials = 500;
  std::uint64_t seed = 1;
  int m_t = 4;
  int m_r = 4;
  joint::JointOptions solver;
  std::string output = "results.csv";
  OutputFormat format = OutputFormat::kCsv;
  bool record_timing = false;  // wall_time_ms is written as 0 otherwise, keeping outputs reproducible
  int threads = 0;             // 0: SWIPT_THREADS or hardware concurrency
  bool progress = true;

  void validate() const;  // throws ConfigError
};

/// Every key is optional; unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

enum class Scheme { kJoint, kRelayOnly };
const char* to_string(Scheme s);

struct TrialRecord {
  std::uint64_t seed = 0;
  int trial = 0;
  double sweep_value = 0.0;  // P_max [dB] or RSI [dB]
  double curve_value = 0.0;  // Q̄ [dBm] for the P_max sweep, P_max [dB] for the RSI sweep
  Scheme scheme = Scheme::kJoint;
  double sum_rate = 0.0;
  double rate_a = 0.0;
  double rate_b = 0.0;
  double rho = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
  double q_harvest = 0.0;
  bool feasible = false;
  int outer_iters = 0;
  double wall_time_ms = 0.0;
  double rank1_defect = 0.0;
  double extract_gap = 0.0;

  bool operator==(const TrialRecord&) const = default;
};

struct SummaryRow {
  double sweep_value = 0.0;
  double curve_value = 0.0;
  Scheme scheme = Scheme::kJoint;
  int n_trials = 0;
  int n_feasible = 0;
  double feasibility_ratio = 0.0;
  double mean_sum_rate = 0.0;         // feasible trials only; NaN when none
  double mean_sum_rate_outage = 0.0;  // infeasible trials counted as zero rate
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted by (sweep, curve, trial, scheme)
  std::vector<SummaryRow> summary;
  int midrun_infeasible = 0;  // solves that stopped early on a lost constraint
  int joint_below_baseline = 0;
};

/// Parameters for one (sweep, curve) point.
model::SystemParams system_params(const ExperimentConfig& cfg, double sweep_value, double curve_value);
std::vector<std::pair<double, double>> sweep_points(const ExperimentConfig& cfg);
/// Indices into sweep_points grouped by curve, each group in the order it is
/// solved: P_max ascending, RSI descending.
std::vector<std::vector<std::size_t>> sweep_chains(const ExperimentConfig& cfg);

/// Runs both schemes on every (point, trial) and writes the records and the
/// summary. Checks that the output path is writable before solving.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
/// Same, without touching the filesystem. When `points` is given it receives
/// the returned operating point of each record, in record order.
ExperimentResult compute_experiment(const ExperimentConfig& cfg, std::vector<model::OperatingPoint>* points = nullptr);

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

/// Rounds to the 9 significant digits the CSV carries.
double quantize(double x);

void emit(const std::vector<TrialRecord>& records, OutputFormat format, const std::filesystem::path& path);
void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);
std::string to_csv(const std::vector<TrialRecord>& records);
std::string to_json(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> records_from_json(const std::string& text);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

int worker_count(int requested);

}  // namespace swipt::harness
