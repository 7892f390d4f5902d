#include "bnmoo/harness.hpp"

#include <cstdio>
#include <sstream>

#include "bnmoo/io.hpp"
#include "bnmoo/likelihood.hpp"

namespace bnmoo {

using nlohmann::json;

LearnerSet default_learners() {
  LearnerSet l;
  HcConfig aic;
  aic.score = ScoreKind::AIC;
  HcConfig bic;
  bic.score = ScoreKind::BIC;
  l.hc = {aic, bic};
  return l;
}

std::string baseline_name(const HcConfig& hc) {
  std::string name = "hc-" + std::string(to_string(hc.score));
  if (hc.complexity == Complexity::Edges) name += "-edges";
  return name;
}

void ExperimentGrid::validate() const {
  if (n < 1) throw ConfigError("grid: --nodes must be >= 1");
  if (densities.empty()) throw ConfigError("grid: no densities given");
  if (sample_sizes.empty()) throw ConfigError("grid: no sample sizes given");
  if (noises.empty()) throw ConfigError("grid: no noise levels given");
  if (repetitions < 1) throw ConfigError("grid: --reps must be >= 1");
  if (threads < 0) throw ConfigError("grid: --threads must be >= 0");
  if (!(learners.cpt_concentration > 0.0))
    throw ConfigError("grid: CPT concentration must be positive");
  try {
    for (std::size_t id = 0; id < scenario_count(); ++id) scenario(id).validate();
    learners.nsga2.validate();
    for (const auto& hc : learners.hc) hc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

ScenarioConfig ExperimentGrid::scenario(std::size_t id) const {
  const std::size_t ns = sample_sizes.size();
  const std::size_t nz = noises.size();
  ScenarioConfig c;
  c.n = n;
  c.density = densities[id / (ns * nz)];
  c.m = sample_sizes[(id / nz) % ns];
  c.noise = noises[id % nz];
  c.seed = master_seed;
  return c;
}

namespace {

// Learner k of a repetition draws from its own stream so that adding or
// reordering baselines never perturbs the others.
std::uint64_t learner_seed(std::uint64_t stream_seed, std::uint64_t k) {
  return splitmix64(stream_seed ^ splitmix64(k + 1));
}

SolutionRecord make_solution(std::string algorithm, int slot, const Dag& dag,
                             const Objectives& obj, const Dag& truth) {
  SolutionRecord s;
  s.algorithm = std::move(algorithm);
  s.slot = slot;
  s.dag = dag;
  s.objectives = obj;
  s.metrics = metrics(structural_confusion(dag, truth));
  return s;
}

json opt_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json aggregate_json(const Aggregate& a) {
  return {{"count", a.count}, {"excluded", a.excluded}, {"mean", a.mean},
          {"stddev", a.stddev}};
}

json edges_json(const Dag& dag) {
  json e = json::array();
  for (const auto& x : dag.edges()) e.push_back({x.parent, x.child});
  return e;
}

std::string rep_prefix(int r) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "rep_%03d", r);
  return buf;
}

std::string opt_csv(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

}  // namespace

RepetitionRecord run_repetition(const ScenarioConfig& config,
                                const LearnerSet& learners,
                                std::uint64_t stream_seed, int repetition) {
  config.validate();
  RepetitionRecord rec;
  rec.repetition = repetition;
  rec.seed = stream_seed;

  Rng rng(stream_seed);
  const std::vector<int> arities(config.n, 2);
  const Dag truth_dag = random_dag(config.n, config.density, rng);
  rec.truth = random_cpts(truth_dag, arities, rng, learners.cpt_concentration);
  rec.clean = forward_sample(rec.truth, config.m, rng);
  rec.data = inject_noise(rec.clean, config.noise, rng);

  FamilyScoreCache cache(rec.data);
  rec.truth_point = {cache.log_likelihood(truth_dag),
                     static_cast<int>(truth_dag.edge_count())};

  Rng nsga_rng(learner_seed(stream_seed, 0));
  EvolveResult evo = evolve(cache, learners.nsga2, nsga_rng);
  rec.front = std::move(evo.front);
  rec.trace = std::move(evo.trace);
  const FrontSummary summary = front_summary(rec.front);
  for (std::size_t slot = 0; slot < summary.representatives.size(); ++slot) {
    const auto& ind = summary.representatives[slot];
    rec.nsga2.push_back(make_solution("nsga2", static_cast<int>(slot), ind.dag,
                                      ind.objectives, truth_dag));
  }

  for (std::size_t k = 0; k < learners.hc.size(); ++k) {
    const HcConfig& hc = learners.hc[k];
    Rng hc_rng(learner_seed(stream_seed, k + 1));
    HcResult res = hill_climb(cache, hc, hc_rng);
    const Objectives obj{cache.log_likelihood(res.dag),
                         static_cast<int>(res.dag.edge_count())};
    SolutionRecord s = make_solution(baseline_name(hc), 0, res.dag, obj, truth_dag);
    s.score = res.score;
    rec.front_dominates_baseline.push_back(front_dominates_point(rec.front, obj));
    rec.baselines.push_back(std::move(s));
  }
  rec.front_dominates_truth = front_dominates_point(rec.front, rec.truth_point);
  return rec;
}

ScenarioReport run_scenario(const ScenarioConfig& config, std::size_t scenario_id,
                            const LearnerSet& learners, int repetitions,
                            std::uint64_t master_seed, int threads) {
  config.validate();
  if (repetitions < 1) throw ConfigError("run_scenario: repetitions must be >= 1");
  ScenarioReport report;
  report.scenario_id = scenario_id;
  report.config = config;
  report.master_seed = master_seed;
  report.records.resize(repetitions);

  auto run_one = [&](int r) {
    const std::uint64_t seed = mix_seed(master_seed, scenario_id, r);
    try {
      report.records[r] = run_repetition(config, learners, seed, r);
    } catch (const std::exception& e) {
      RepetitionRecord failed;
      failed.repetition = r;
      failed.seed = seed;
      failed.error = e.what();
      report.records[r] = std::move(failed);
    }
  };

  if (threads > 1) {
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
    for (int r = 0; r < repetitions; ++r) run_one(r);
  } else {
    for (int r = 0; r < repetitions; ++r) run_one(r);
  }
  aggregate_report(report);
  return report;
}

void aggregate_report(ScenarioReport& report) {
  report.aggregates.clear();
  report.dominance_rates.clear();
  report.failed_repetitions = 0;

  std::vector<const RepetitionRecord*> ok;
  for (const auto& r : report.records) {
    if (r.error) ++report.failed_repetitions;
    else ok.push_back(&r);
  }

  auto slot_aggregate = [&](const std::string& algorithm, int slot, auto pick) {
    std::vector<std::optional<double>> f1, f2, pr, rc, sp;
    for (const auto* r : ok) {
      const SolutionRecord& s = pick(*r);
      f1.emplace_back(s.objectives.log_likelihood);
      f2.emplace_back(static_cast<double>(s.objectives.arcs));
      pr.push_back(s.metrics.precision);
      rc.push_back(s.metrics.recall);
      sp.push_back(s.metrics.specificity);
    }
    report.aggregates.push_back({algorithm, slot, aggregate(f1), aggregate(f2),
                                 aggregate(pr), aggregate(rc), aggregate(sp)});
  };

  if (!ok.empty()) {
    const std::size_t slots = kSummaryQuantiles.size();
    for (std::size_t s = 0; s < slots; ++s)
      slot_aggregate("nsga2", static_cast<int>(s),
                     [s](const RepetitionRecord& r) -> const SolutionRecord& {
                       return r.nsga2[s];
                     });
    for (std::size_t k = 0; k < ok.front()->baselines.size(); ++k)
      slot_aggregate(ok.front()->baselines[k].algorithm, 0,
                     [k](const RepetitionRecord& r) -> const SolutionRecord& {
                       return r.baselines[k];
                     });
  }

  std::vector<double> tf1, tf2;
  for (const auto* r : ok) {
    tf1.push_back(r->truth_point.log_likelihood);
    tf2.push_back(r->truth_point.arcs);
  }
  report.truth_f1 = aggregate(tf1);
  report.truth_f2 = aggregate(tf2);

  const double denom = ok.empty() ? 1.0 : static_cast<double>(ok.size());
  if (!ok.empty()) {
    for (std::size_t k = 0; k < ok.front()->baselines.size(); ++k) {
      std::size_t hits = 0;
      for (const auto* r : ok) hits += r->front_dominates_baseline[k] ? 1 : 0;
      report.dominance_rates.emplace_back(ok.front()->baselines[k].algorithm,
                                          static_cast<double>(hits) / denom);
    }
  }
  std::size_t truth_hits = 0;
  for (const auto* r : ok) truth_hits += r->front_dominates_truth ? 1 : 0;
  report.truth_dominance_rate = ok.empty() ? 0.0 : truth_hits / denom;
}

json report_to_json(const ScenarioReport& report, const LearnerSet& learners) {
  const auto& c = report.config;
  json j;
  j["schema"] = 1;
  j["scenario_id"] = report.scenario_id;
  j["config"] = {{"n", c.n}, {"density", c.density}, {"samples", c.m},
                 {"noise", c.noise}};
  j["master_seed"] = report.master_seed;
  j["repetitions"] = report.records.size();

  const auto& ns = learners.nsga2;
  json baselines = json::array();
  for (const auto& hc : learners.hc)
    baselines.push_back({{"name", baseline_name(hc)},
                         {"score", to_string(hc.score)},
                         {"complexity", to_string(hc.complexity)},
                         {"max_iterations", hc.max_iterations},
                         {"restarts", hc.restarts},
                         {"restart_density", hc.restart_density}});
  j["learners"] = {
      {"nsga2",
       {{"population_size", ns.population_size},
        {"generations", ns.generations},
        {"p_mu", ns.mutation_rate(c.n)},
        {"p_chi", ns.p_chi},
        {"init_density", ns.init_density},
        {"crossover", to_string(ns.crossover)}}},
      {"baselines", std::move(baselines)},
      {"cpt_concentration", learners.cpt_concentration}};

  json records = json::array();
  for (const auto& r : report.records) {
    const std::string prefix = rep_prefix(r.repetition);
    json jr = {{"repetition", r.repetition}, {"seed", r.seed}};
    if (r.error) {
      jr["error"] = *r.error;
      records.push_back(std::move(jr));
      continue;
    }
    jr["truth_file"] = prefix + "_truth.json";
    jr["data_file"] = prefix + "_data.csv";
    jr["clean_data_file"] = prefix + "_clean.csv";
    jr["trace_file"] = "trace_" + prefix + ".csv";
    jr["truth_point"] = {{"f1", r.truth_point.log_likelihood},
                         {"f2", r.truth_point.arcs}};
    jr["front"] = front_to_json(r.front);
    json sols = json::array();
    auto add = [&sols](const SolutionRecord& s) {
      json js = {{"algorithm", s.algorithm},
                 {"slot", s.slot},
                 {"edges", edges_json(s.dag)},
                 {"f1", s.objectives.log_likelihood},
                 {"f2", s.objectives.arcs},
                 {"precision", opt_json(s.metrics.precision)},
                 {"recall", opt_json(s.metrics.recall)},
                 {"specificity", opt_json(s.metrics.specificity)}};
      if (s.score) js["score"] = *s.score;
      sols.push_back(std::move(js));
    };
    for (const auto& s : r.nsga2) add(s);
    for (const auto& s : r.baselines) add(s);
    jr["solutions"] = std::move(sols);
    json dom = json::object();
    for (std::size_t k = 0; k < r.baselines.size(); ++k)
      dom[r.baselines[k].algorithm] = static_cast<bool>(r.front_dominates_baseline[k]);
    jr["front_dominates"] = std::move(dom);
    jr["front_dominates_truth"] = r.front_dominates_truth;
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);

  json aggs = json::array();
  for (const auto& a : report.aggregates)
    aggs.push_back({{"algorithm", a.algorithm},
                    {"slot", a.slot},
                    {"f1", aggregate_json(a.f1)},
                    {"f2", aggregate_json(a.f2)},
                    {"precision", aggregate_json(a.precision)},
                    {"recall", aggregate_json(a.recall)},
                    {"specificity", aggregate_json(a.specificity)}});
  j["aggregates"] = std::move(aggs);
  j["truth"] = {{"f1", aggregate_json(report.truth_f1)},
                {"f2", aggregate_json(report.truth_f2)}};
  json rates = json::object();
  for (const auto& [name, rate] : report.dominance_rates) rates[name] = rate;
  j["dominance_rates"] = std::move(rates);
  j["truth_dominance_rate"] = report.truth_dominance_rate;
  j["failed_repetitions"] = report.failed_repetitions;
  return j;
}

json plot_data_json(const ScenarioReport& report) {
  auto point = [](const Aggregate& x, const Aggregate& y, const char* xn,
                  const char* yn) {
    return json{{std::string(xn) + "_mean", x.mean}, {std::string(xn) + "_sd", x.stddev},
                {std::string(yn) + "_mean", y.mean}, {std::string(yn) + "_sd", y.stddev},
                {"count", std::min(x.count, y.count)}};
  };
  json objective = json::array();
  json pr = json::array();
  json ss = json::array();
  for (const auto& a : report.aggregates) {
    json base = {{"algorithm", a.algorithm}, {"slot", a.slot}};
    json o = point(a.f2, a.f1, "f2", "f1");
    o.update(base);
    objective.push_back(std::move(o));
    json p = point(a.recall, a.precision, "recall", "precision");
    p.update(base);
    pr.push_back(std::move(p));
    json s = point(a.specificity, a.recall, "specificity", "sensitivity");
    s.update(base);
    ss.push_back(std::move(s));
  }
  json truth = point(report.truth_f2, report.truth_f1, "f2", "f1");
  truth["algorithm"] = "truth";
  truth["slot"] = 0;
  objective.push_back(std::move(truth));
  const auto& c = report.config;
  return {{"schema", 1},
          {"scenario_id", report.scenario_id},
          {"config", {{"n", c.n}, {"density", c.density}, {"samples", c.m}, {"noise", c.noise}}},
          {"objective_plane", std::move(objective)},
          {"precision_recall", std::move(pr)},
          {"sensitivity_specificity", std::move(ss)}};
}

void append_metrics_csv(std::ostream& out, const ScenarioReport& report) {
  const auto& c = report.config;
  for (const auto& r : report.records) {
    if (r.error) continue;
    auto row = [&](const SolutionRecord& s) {
      out << report.scenario_id << ',' << format_double(c.density) << ',' << c.m
          << ',' << format_double(c.noise) << ',' << r.repetition << ','
          << s.algorithm << ',' << s.slot << ','
          << format_double(s.objectives.log_likelihood) << ',' << s.objectives.arcs
          << ',' << opt_csv(s.metrics.precision) << ',' << opt_csv(s.metrics.recall)
          << ',' << opt_csv(s.metrics.specificity) << '\n';
    };
    for (const auto& s : r.nsga2) row(s);
    for (const auto& s : r.baselines) row(s);
  }
}

void write_scenario(const std::filesystem::path& dir, const ScenarioReport& report,
                    const LearnerSet& learners) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", report_to_json(report, learners).dump(2) + "\n");
  write_file(dir / "plot.json", plot_data_json(report).dump(2) + "\n");
  for (const auto& r : report.records) {
    if (r.error) continue;
    const std::string prefix = rep_prefix(r.repetition);
    write_file(dir / (prefix + "_truth.json"), network_to_json(r.truth).dump(2) + "\n");
    write_file(dir / (prefix + "_truth.dot"), to_dot(r.truth.dag, "truth"));
    std::ostringstream data, clean, trace;
    write_dataset_csv(data, r.data);
    write_dataset_csv(clean, r.clean);
    write_trace_csv(trace, r.trace);
    write_file(dir / (prefix + "_data.csv"), data.str());
    write_file(dir / (prefix + "_clean.csv"), clean.str());
    write_file(dir / ("trace_" + prefix + ".csv"), trace.str());
    for (const auto& s : r.nsga2)
      write_file(dir / (prefix + "_nsga2_slot" + std::to_string(s.slot) + ".dot"),
                 to_dot(s.dag, "nsga2_slot" + std::to_string(s.slot)));
    for (const auto& s : r.baselines)
      write_file(dir / (prefix + "_" + s.algorithm + ".dot"), to_dot(s.dag, "hc"));
  }
}

GridResult run_grid(const ExperimentGrid& grid, const std::filesystem::path& out_dir) {
  grid.validate();
  GridResult result;
  std::ostringstream csv;
  csv << kMetricsCsvHeader << '\n';
  for (std::size_t id = 0; id < grid.scenario_count(); ++id) {
    ScenarioReport report =
        run_scenario(grid.scenario(id), id, grid.learners, grid.repetitions,
                     grid.master_seed, grid.threads);
    char name[32];
    std::snprintf(name, sizeof name, "scenario_%02zu", id);
    try {
      write_scenario(out_dir / name, report, grid.learners);
    } catch (const std::exception& e) {
      throw IoError(std::string(name) + ": " + e.what());
    }
    append_metrics_csv(csv, report);
    result.reports.push_back(std::move(report));
  }
  result.metrics_csv = out_dir / "metrics.csv";
  write_file(result.metrics_csv, csv.str());
  return result;
}

}  // namespace bnmoo
