#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnmoo/evalmetrics.hpp"
#include "bnmoo/hillclimb.hpp"
#include "bnmoo/network.hpp"
#include "bnmoo/nsga2.hpp"
#include "bnmoo/synth.hpp"

namespace bnmoo {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LearnerSet {
  Nsga2Config nsga2;
  std::vector<HcConfig> hc;  // one baseline per entry
  /// Dirichlet concentration for ground-truth CPT rows (1 = flat).
  double cpt_concentration = 1.0;
};

/// Default baselines: HC-AIC and HC-BIC with parameter-count complexity.
LearnerSet default_learners();
std::string baseline_name(const HcConfig& hc);  // "hc-aic", "hc-bic", ...

struct ExperimentGrid {
  int n = 15;
  std::vector<double> densities{0.2, 0.5, 0.8};
  std::vector<int> sample_sizes{50, 100, 500};
  std::vector<double> noises{0.0, 0.1, 0.2};
  int repetitions = 50;
  LearnerSet learners = default_learners();
  std::uint64_t master_seed = 0;
  /// Threads for repetitions. 1 runs them sequentially.
  int threads = 1;

  /// Throws ConfigError.
  void validate() const;
  std::size_t scenario_count() const {
    return densities.size() * sample_sizes.size() * noises.size();
  }
  /// Scenario id s enumerates densities slowest, then samples, then noises.
  ScenarioConfig scenario(std::size_t id) const;
};

struct SolutionRecord {
  std::string algorithm;  // "nsga2", "hc-aic", "hc-bic"
  int slot = 0;           // representative slot for nsga2, 0 for baselines
  Dag dag;
  Objectives objectives;
  std::optional<double> score;  // regularized score for baselines
  StructuralMetrics metrics;
};

struct RepetitionRecord {
  int repetition = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> error;

  BayesianNetwork truth;
  Dataset clean;
  Dataset data;  // what the learners saw
  Objectives truth_point;
  ParetoFront front;
  std::vector<GenerationStats> trace;
  std::vector<SolutionRecord> nsga2;      // the five summary slots
  std::vector<SolutionRecord> baselines;  // one per HcConfig
  bool front_dominates_truth = false;
  std::vector<bool> front_dominates_baseline;  // parallel to baselines
};

struct SlotAggregate {
  std::string algorithm;
  int slot = 0;
  Aggregate f1, f2, precision, recall, specificity;
};

struct ScenarioReport {
  std::size_t scenario_id = 0;
  ScenarioConfig config;
  std::uint64_t master_seed = 0;
  std::vector<RepetitionRecord> records;
  std::vector<SlotAggregate> aggregates;
  Aggregate truth_f1, truth_f2;
  std::vector<std::pair<std::string, double>> dominance_rates;  // per baseline
  double truth_dominance_rate = 0.0;
  std::size_t failed_repetitions = 0;
};

/// One repetition: fresh ground truth, sampling, noise, all learners.
RepetitionRecord run_repetition(const ScenarioConfig& config,
                                const LearnerSet& learners,
                                std::uint64_t stream_seed, int repetition);

ScenarioReport run_scenario(const ScenarioConfig& config, std::size_t scenario_id,
                            const LearnerSet& learners, int repetitions,
                            std::uint64_t master_seed, int threads = 1);

void aggregate_report(ScenarioReport& report);

/// Report JSON, schema 1. Datasets and truth networks are referenced by file
/// name relative to the scenario directory.
nlohmann::json report_to_json(const ScenarioReport& report, const LearnerSet&);
/// Three-panel plot data: objective plane, precision-recall,
/// sensitivity-specificity.
nlohmann::json plot_data_json(const ScenarioReport& report);

inline constexpr const char* kMetricsCsvHeader =
    "scenario,density,samples,noise,repetition,algorithm,slot,f1,f2,"
    "precision,recall,specificity";
void append_metrics_csv(std::ostream& out, const ScenarioReport& report);

/// Writes scenario_<id>/{report.json, plot.json, rep_<r>_*.{csv,json,dot},
/// trace_rep_<r>.csv}.
void write_scenario(const std::filesystem::path& dir,
                    const ScenarioReport& report, const LearnerSet& learners);

struct GridResult {
  std::vector<ScenarioReport> reports;
  std::filesystem::path metrics_csv;
};

/// Validates, runs every scenario, and writes all outputs under out_dir.
GridResult run_grid(const ExperimentGrid& grid,
                    const std::filesystem::path& out_dir);

}  // namespace bnmoo
