// SPDX-License-Identifier: Apache-2.0
#include "swipt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace swipt::harness {

namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct ComplexNormal {
  std::mt19937_64 gen;
  std::normal_distribution<double> n{0.0, std::sqrt(0.5)};
  cxla::Complex operator()() {
    const double re = n(gen);
    const double im = n(gen);
    return {re, im};
  }
};

cxla::CVector draw_vector(ComplexNormal& cn, int n) {
  cxla::CVector v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = cn();
  return v;
}

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSumrateVsPmax: return "sumrate-vs-pmax";
    case ExperimentKind::kSumrateVsRsi: return "sumrate-vs-rsi";
    case ExperimentKind::kSingle: return "single";
  }
  return "?";
}

std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::filesystem::path summary_path(const std::filesystem::path& p) { return p.string() + ".summary"; }

TrialRecord make_record(const ExperimentConfig& cfg, int trial, double sweep, double curve, Scheme scheme,
                        const joint::JointResult& r, double ms) {
  TrialRecord rec;
  rec.seed = cfg.seed;
  rec.trial = trial;
  rec.sweep_value = quantize(sweep);
  rec.curve_value = quantize(curve);
  rec.scheme = scheme;
  rec.feasible = r.status != joint::Status::kInfeasible;
  rec.outer_iters = r.outer_iters;
  rec.wall_time_ms = cfg.record_timing ? quantize(ms) : 0.0;
  if (rec.feasible) {
    rec.sum_rate = quantize(r.report.sum_rate);
    rec.rate_a = quantize(r.report.rate_a);
    rec.rate_b = quantize(r.report.rate_b);
    rec.rho = quantize(r.point.rho);
    rec.p_a = quantize(r.point.p_a);
    rec.p_b = quantize(r.point.p_b);
    rec.q_harvest = quantize(r.report.q_harvest);
    rec.rank1_defect = quantize(r.rank1_defect);
    rec.extract_gap = quantize(r.extract_gap);
  }
  return rec;
}

template <class T>
void take(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

model::ChannelSet gen_channels(std::uint64_t seed, std::uint64_t trial, const model::SystemParams& sp) {
  sp.validate();
  ComplexNormal cn{std::mt19937_64(splitmix64(seed ^ splitmix64(trial)))};
  model::ChannelSet ch;
  ch.h_ar = draw_vector(cn, sp.m_r);
  ch.h_br = draw_vector(cn, sp.m_r);
  ch.h_ra = draw_vector(cn, sp.m_t);
  ch.h_rb = draw_vector(cn, sp.m_t);
  ch.h_rr = cxla::CMatrix(static_cast<std::size_t>(sp.m_r), static_cast<std::size_t>(sp.m_t));
  const double s_r = std::sqrt(sp.sigma2_r);
  for (std::size_t r = 0; r < ch.h_rr.rows(); ++r)
    for (std::size_t c = 0; c < ch.h_rr.cols(); ++c) ch.h_rr(r, c) = s_r * cn();
  ch.h_aa = std::sqrt(sp.sigma2_a) * cn();
  ch.h_bb = std::sqrt(sp.sigma2_b) * cn();
  return ch;
}

void ExperimentConfig::validate() const {
  auto finite_list = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw ConfigError(std::string(name) + " must be nonempty");
    for (double x : v)
      if (!std::isfinite(x)) throw ConfigError(std::string(name) + " has a non-finite value");
  };
  finite_list(p_max_db, "p_max_db");
  finite_list(q_min_dbm, "q_min_dbm");
  finite_list(rsi_db, "rsi_db");
  if (!std::isfinite(p_relay_db)) throw ConfigError("p_relay_db must be finite");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (m_t < 2 || m_r < 2) throw ConfigError("m_t and m_r must be >= 2");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0,1]");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (experiment == ExperimentKind::kSumrateVsPmax && rsi_db.size() != 1)
    throw ConfigError("sumrate-vs-pmax takes exactly one rsi_db value");
  if (experiment == ExperimentKind::kSumrateVsRsi && q_min_dbm.size() != 1)
    throw ConfigError("sumrate-vs-rsi takes exactly one q_min_dbm value");
  if (output.empty()) throw ConfigError("output must be a path");
  const double inv = 1.0 / solver.alpha_step;
  if (!(solver.alpha_step > 0.0 && solver.alpha_step <= 1.0) || std::abs(inv - std::round(inv)) > 1e-9 * inv)
    throw ConfigError("alpha_step must lie in (0,1] with 1/alpha_step an integer");
  if (solver.max_outer < 1) throw ConfigError("max_outer must be >= 1");
  if (!(solver.outer_tol > 0.0)) throw ConfigError("outer_tol must be positive");
  if (!(solver.rho_init > 0.0 && solver.rho_init < 1.0)) throw ConfigError("rho_init must lie in (0,1)");
  if (solver.scalar.power_grid_points < 2) throw ConfigError("power_grid_points must be >= 2");
  if (solver.beam.alpha_refine < 0) throw ConfigError("alpha_refine must be >= 0");
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const char* const kKeys[] = {
      "experiment", "p_max_db",   "q_min_dbm",         "rsi_db",       "p_relay_db",     "beta",
      "trials",     "seed",       "m_t",               "m_r",          "alpha_step",     "outer_tol",
      "max_outer",  "rho_init",   "dc_tol",            "dc_max_iter",  "fw_gap_tol",     "fw_max_iter",
      "power_grid_points",        "alpha_refine",      "one_way_starts", "output",       "format",
      "record_timing",            "threads",           "progress"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return item.key() == k; }) ==
        std::end(kKeys))
      throw ConfigError("unknown config key '" + item.key() + "'");
  }

  ExperimentConfig c;
  if (j.contains("experiment")) {
    std::string kind;
    take(j, "experiment", kind);
    if (kind == "sumrate-vs-pmax") c.experiment = ExperimentKind::kSumrateVsPmax;
    else if (kind == "sumrate-vs-rsi") c.experiment = ExperimentKind::kSumrateVsRsi;
    else if (kind == "single") c.experiment = ExperimentKind::kSingle;
    else throw ConfigError("unknown experiment '" + kind + "'");
  }
  take(j, "p_max_db", c.p_max_db);
  take(j, "q_min_dbm", c.q_min_dbm);
  take(j, "rsi_db", c.rsi_db);
  take(j, "p_relay_db", c.p_relay_db);
  take(j, "beta", c.beta);
  take(j, "trials", c.trials);
  take(j, "seed", c.seed);
  take(j, "m_t", c.m_t);
  take(j, "m_r", c.m_r);
  take(j, "alpha_step", c.solver.alpha_step);
  take(j, "outer_tol", c.solver.outer_tol);
  take(j, "max_outer", c.solver.max_outer);
  take(j, "rho_init", c.solver.rho_init);
  take(j, "dc_tol", c.solver.beam.dc.dc_tol);
  take(j, "dc_max_iter", c.solver.beam.dc.dc_max_iter);
  take(j, "fw_gap_tol", c.solver.beam.dc.fw_gap_tol);
  take(j, "fw_max_iter", c.solver.beam.dc.fw_max_iter);
  take(j, "power_grid_points", c.solver.scalar.power_grid_points);
  take(j, "alpha_refine", c.solver.beam.alpha_refine);
  take(j, "one_way_starts", c.solver.one_way_starts);
  take(j, "output", c.output);
  if (j.contains("format")) {
    std::string f;
    take(j, "format", f);
    if (f == "csv") c.format = OutputFormat::kCsv;
    else if (f == "json") c.format = OutputFormat::kJson;
    else throw ConfigError("format must be csv or json");
  }
  take(j, "record_timing", c.record_timing);
  take(j, "threads", c.threads);
  take(j, "progress", c.progress);
  c.validate();
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = kind_name(c.experiment);
  j["p_max_db"] = c.p_max_db;
  j["q_min_dbm"] = c.q_min_dbm;
  j["rsi_db"] = c.rsi_db;
  j["p_relay_db"] = c.p_relay_db;
  j["beta"] = c.beta;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["m_t"] = c.m_t;
  j["m_r"] = c.m_r;
  j["alpha_step"] = c.solver.alpha_step;
  j["outer_tol"] = c.solver.outer_tol;
  j["max_outer"] = c.solver.max_outer;
  j["rho_init"] = c.solver.rho_init;
  j["dc_tol"] = c.solver.beam.dc.dc_tol;
  j["dc_max_iter"] = c.solver.beam.dc.dc_max_iter;
  j["fw_gap_tol"] = c.solver.beam.dc.fw_gap_tol;
  j["fw_max_iter"] = c.solver.beam.dc.fw_max_iter;
  j["power_grid_points"] = c.solver.scalar.power_grid_points;
  j["alpha_refine"] = c.solver.beam.alpha_refine;
  j["one_way_starts"] = c.solver.one_way_starts;
  j["output"] = c.output;
  j["format"] = c.format == OutputFormat::kCsv ? "csv" : "json";
  j["record_timing"] = c.record_timing;
  j["threads"] = c.threads;
  j["progress"] = c.progress;
  return j.dump(2);
}

const char* to_string(Scheme s) { return s == Scheme::kJoint ? "joint" : "relay-only"; }

model::SystemParams system_params(const ExperimentConfig& cfg, double sweep_value, double curve_value) {
  double p_max_db = 0.0, q_dbm = 0.0, rsi = 0.0;
  switch (cfg.experiment) {
    case ExperimentKind::kSumrateVsPmax:
    case ExperimentKind::kSingle:
      p_max_db = sweep_value;
      q_dbm = curve_value;
      rsi = cfg.rsi_db.front();
      break;
    case ExperimentKind::kSumrateVsRsi:
      rsi = sweep_value;
      p_max_db = curve_value;
      q_dbm = cfg.q_min_dbm.front();
      break;
  }
  model::SystemParams sp;
  sp.p_max = db_to_linear(p_max_db);
  sp.p_relay = db_to_linear(cfg.p_relay_db);
  sp.q_min = db_to_linear(q_dbm);
  sp.beta = cfg.beta;
  sp.m_t = cfg.m_t;
  sp.m_r = cfg.m_r;
  sp.sigma2_a = sp.sigma2_b = sp.sigma2_r = db_to_linear(rsi);
  return sp;
}

std::vector<std::pair<double, double>> sweep_points(const ExperimentConfig& cfg) {
  std::vector<std::pair<double, double>> pts;
  switch (cfg.experiment) {
    case ExperimentKind::kSumrateVsPmax:
      for (double c : cfg.q_min_dbm)
        for (double s : cfg.p_max_db) pts.emplace_back(s, c);
      break;
    case ExperimentKind::kSumrateVsRsi:
      for (double c : cfg.p_max_db)
        for (double s : cfg.rsi_db) pts.emplace_back(s, c);
      break;
    case ExperimentKind::kSingle:
      pts.emplace_back(cfg.p_max_db.front(), cfg.q_min_dbm.front());
      break;
  }
  return pts;
}

std::vector<std::vector<std::size_t>> sweep_chains(const ExperimentConfig& cfg) {
  const auto points = sweep_points(cfg);
  std::vector<std::vector<std::size_t>> chains;
  std::vector<double> curves;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto it = std::find(curves.begin(), curves.end(), points[i].second);
    if (it == curves.end()) {
      curves.push_back(points[i].second);
      chains.push_back({i});
    } else {
      chains[static_cast<std::size_t>(it - curves.begin())].push_back(i);
    }
  }
  // A solution at lower P_max, or at higher RSI, stays feasible and no worse
  // at the next point of the chain.
  const bool descending = cfg.experiment == ExperimentKind::kSumrateVsRsi;
  for (auto& c : chains) {
    std::stable_sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) {
      return descending ? points[a].first > points[b].first : points[a].first < points[b].first;
    });
  }
  return chains;
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SWIPT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

ExperimentResult compute_experiment(const ExperimentConfig& cfg, std::vector<model::OperatingPoint>* points_out) {
  cfg.validate();
  const auto points = sweep_points(cfg);
  const auto chains = sweep_chains(cfg);
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t n_tasks = chains.size() * trials;

  ExperimentResult res;
  res.records.resize(2 * points.size() * trials);
  std::vector<model::OperatingPoint> solved(points_out ? res.records.size() : 0);
  std::vector<char> midrun(points.size() * trials, 0);
  std::vector<char> below(points.size() * trials, 0);
  std::vector<std::atomic<int>> done(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mu;

  // One task is one (curve, trial) pair walked along its sweep chain; each
  // point's solutions seed the next point, where they remain feasible.
  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= n_tasks) return;
      const auto& chain = chains[task / trials];
      const int trial = static_cast<int>(task % trials);
      std::vector<joint::Seed> seed_joint, seed_base;
      for (std::size_t ip : chain) {
        const auto [sweep, curve] = points[ip];
        const model::SystemParams sp = system_params(cfg, sweep, curve);
        const model::ChannelSet ch = gen_channels(cfg.seed, static_cast<std::uint64_t>(trial), sp);

        using Clock = std::chrono::steady_clock;
        const auto t0 = Clock::now();
        const joint::JointResult base = joint::relay_only_optimize(ch, sp, cfg.solver, seed_base);
        const auto t1 = Clock::now();
        const joint::JointResult full = joint::joint_optimize(ch, sp, cfg.solver, base, seed_joint);
        const auto t2 = Clock::now();
        auto ms = [](auto a, auto b) { return std::chrono::duration<double, std::milli>(b - a).count(); };

        const std::size_t slot = ip * trials + static_cast<std::size_t>(trial);
        res.records[2 * slot] = make_record(cfg, trial, sweep, curve, Scheme::kJoint, full, ms(t1, t2));
        res.records[2 * slot + 1] = make_record(cfg, trial, sweep, curve, Scheme::kRelayOnly, base, ms(t0, t1));
        if (points_out) {
          solved[2 * slot] = full.point;
          solved[2 * slot + 1] = base.point;
        }
        midrun[slot] = static_cast<char>(full.stopped_infeasible) + static_cast<char>(base.stopped_infeasible);
        below[slot] = base.status != joint::Status::kInfeasible &&
                      (full.status == joint::Status::kInfeasible || full.report.sum_rate < base.report.sum_rate - 1e-9);
        seed_joint.clear();
        seed_base.clear();
        if (full.status != joint::Status::kInfeasible) seed_joint.push_back(joint::seed_from(full));
        if (base.status != joint::Status::kInfeasible) seed_base.push_back(joint::seed_from(base));

        if (++done[ip] == cfg.trials && cfg.progress) {
          std::lock_guard lock(log_mu);
          std::fprintf(stderr, "[%s] point %zu/%zu (sweep %g, curve %g) done\n", kind_name(cfg.experiment),
                       ip + 1, points.size(), sweep, curve);
        }
      }
    }
  };

  const int n_workers = std::min<int>(worker_count(cfg.threads), static_cast<int>(n_tasks));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }

  std::vector<std::size_t> order(res.records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto rank = [&](std::size_t i) {
    const TrialRecord& r = res.records[i];
    return std::tuple(r.sweep_value, r.curve_value, r.trial, r.scheme);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank(a) < rank(b); });
  std::vector<TrialRecord> sorted;
  sorted.reserve(order.size());
  for (std::size_t i : order) sorted.push_back(res.records[i]);
  res.records = std::move(sorted);
  if (points_out) {
    points_out->clear();
    for (std::size_t i : order) points_out->push_back(std::move(solved[i]));
  }
  for (std::size_t i = 0; i < midrun.size(); ++i) {
    res.midrun_infeasible += midrun[i];
    res.joint_below_baseline += below[i];
  }
  res.summary = summarize(res.records);
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::filesystem::path out(cfg.output);
  // Fail before solving if either file cannot be created.
  write_file(out, "");
  write_file(summary_path(out), "");
  ExperimentResult res = compute_experiment(cfg);
  emit(res.records, cfg.format, out);
  return res;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<double> sums;
  auto key = [](const auto& x) { return std::tuple(x.sweep_value, x.curve_value, x.scheme); };
  for (const TrialRecord& r : records) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) { return key(s) == key(r); });
    if (it == rows.end()) {
      SummaryRow s;
      s.sweep_value = r.sweep_value;
      s.curve_value = r.curve_value;
      s.scheme = r.scheme;
      rows.push_back(s);
      sums.push_back(0.0);
      it = rows.end() - 1;
    }
    const std::size_t i = static_cast<std::size_t>(it - rows.begin());
    ++it->n_trials;
    if (r.feasible) {
      ++it->n_feasible;
      sums[i] += r.sum_rate;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SummaryRow& s = rows[i];
    s.feasibility_ratio = static_cast<double>(s.n_feasible) / s.n_trials;
    s.mean_sum_rate = s.n_feasible > 0 ? sums[i] / s.n_feasible : std::nan("");
    s.mean_sum_rate_outage = sums[i] / s.n_trials;
  }
  std::sort(rows.begin(), rows.end(), [&](const SummaryRow& a, const SummaryRow& b) { return key(a) < key(b); });
  return rows;
}

double quantize(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt9(x).c_str(), nullptr);
}

std::string to_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "seed,trial,sweep_value,curve_value,scheme,sum_rate,rate_a,rate_b,rho,p_a,p_b,q_harvest,feasible,"
      "outer_iters,wall_time_ms,rank1_defect,extract_gap\n";
  for (const TrialRecord& r : records) {
    out += std::to_string(r.seed) + ',' + std::to_string(r.trial) + ',' + fmt9(r.sweep_value) + ',' +
           fmt9(r.curve_value) + ',' + to_string(r.scheme) + ',' + fmt9(r.sum_rate) + ',' + fmt9(r.rate_a) + ',' +
           fmt9(r.rate_b) + ',' + fmt9(r.rho) + ',' + fmt9(r.p_a) + ',' + fmt9(r.p_b) + ',' + fmt9(r.q_harvest) +
           ',' + (r.feasible ? "1" : "0") + ',' + std::to_string(r.outer_iters) + ',' + fmt9(r.wall_time_ms) +
           ',' + fmt9(r.rank1_defect) + ',' + fmt9(r.extract_gap) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<TrialRecord>& records) {
  json arr = json::array();
  for (const TrialRecord& r : records) {
    arr.push_back({{"seed", r.seed},
                   {"trial", r.trial},
                   {"sweep_value", r.sweep_value},
                   {"curve_value", r.curve_value},
                   {"scheme", to_string(r.scheme)},
                   {"sum_rate", r.sum_rate},
                   {"rate_a", r.rate_a},
                   {"rate_b", r.rate_b},
                   {"rho", r.rho},
                   {"p_a", r.p_a},
                   {"p_b", r.p_b},
                   {"q_harvest", r.q_harvest},
                   {"feasible", r.feasible},
                   {"outer_iters", r.outer_iters},
                   {"wall_time_ms", r.wall_time_ms},
                   {"rank1_defect", r.rank1_defect},
                   {"extract_gap", r.extract_gap}});
  }
  return arr.dump(1) + "\n";
}

std::vector<TrialRecord> records_from_json(const std::string& text) {
  std::vector<TrialRecord> out;
  try {
    const json arr = json::parse(text);
    for (const json& o : arr) {
      TrialRecord r;
      r.seed = o.at("seed").get<std::uint64_t>();
      r.trial = o.at("trial").get<int>();
      r.sweep_value = o.at("sweep_value").get<double>();
      r.curve_value = o.at("curve_value").get<double>();
      const auto scheme = o.at("scheme").get<std::string>();
      if (scheme == "joint") r.scheme = Scheme::kJoint;
      else if (scheme == "relay-only") r.scheme = Scheme::kRelayOnly;
      else throw ConfigError("unknown scheme '" + scheme + "'");
      r.sum_rate = o.at("sum_rate").get<double>();
      r.rate_a = o.at("rate_a").get<double>();
      r.rate_b = o.at("rate_b").get<double>();
      r.rho = o.at("rho").get<double>();
      r.p_a = o.at("p_a").get<double>();
      r.p_b = o.at("p_b").get<double>();
      r.q_harvest = o.at("q_harvest").get<double>();
      r.feasible = o.at("feasible").get<bool>();
      r.outer_iters = o.at("outer_iters").get<int>();
      r.wall_time_ms = o.at("wall_time_ms").get<double>();
      r.rank1_defect = o.at("rank1_defect").get<double>();
      r.extract_gap = o.at("extract_gap").get<double>();
      out.push_back(r);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed record JSON: ") + e.what());
  }
  return out;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "sweep_value,curve_value,scheme,n_trials,n_feasible,feasibility_ratio,mean_sum_rate,mean_sum_rate_outage\n";
  for (const SummaryRow& s : rows) {
    out += fmt17(s.sweep_value) + ',' + fmt17(s.curve_value) + ',' + to_string(s.scheme) + ',' +
           std::to_string(s.n_trials) + ',' + std::to_string(s.n_feasible) + ',' + fmt17(s.feasibility_ratio) +
           ',' + fmt17(s.mean_sum_rate) + ',' + fmt17(s.mean_sum_rate_outage) + '\n';
  }
  return out;
}

void emit(const std::vector<TrialRecord>& records, OutputFormat format, const std::filesystem::path& path) {
  if (records.empty()) throw ContractViolation("emit: no records");
  write_file(path, format == OutputFormat::kCsv ? to_csv(records) : to_json(records));
  emit_summary(summarize(records), summary_path(path));
}

void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  write_file(path, summary_to_csv(rows));
}

}  // namespace swipt::harness
