#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bnmoo/evalmetrics.hpp"
#include "bnmoo/exec.hpp"
#include "bnmoo/harness.hpp"
#include "bnmoo/hillclimb.hpp"
#include "bnmoo/io.hpp"
#include "bnmoo/likelihood.hpp"
#include "bnmoo/nsga2.hpp"
#include "bnmoo/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bnmoo;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Options {
  // scenario
  int nodes = 15;
  std::vector<double> densities{0.2};
  std::vector<int> samples{50};
  std::vector<double> noises{0.0};
  double cpt_skew = 1.0;
  // nsga2
  int pop_size = 100;
  int generations = 100;
  std::optional<double> pmu;
  double pchi = 0.9;
  double init_density = 0.1;
  std::string crossover = "single-point";
  // hc
  std::vector<std::string> scores{"bic"};
  std::string complexity = "parameters";
  int max_iterations = 100000;
  int restarts = 0;
  // run
  int reps = 1;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int threads = 1;
  // inputs
  std::string data;
  std::string truth;
  std::string learned;
};

void add_scenario_flags(CLI::App* app, Options& o, bool lists) {
  app->add_option("--nodes", o.nodes, "Number of variables")->check(CLI::PositiveNumber);
  if (lists) {
    app->add_option("--density", o.densities, "Edge densities (comma separated)")
        ->delimiter(',');
    app->add_option("--samples", o.samples, "Sample sizes (comma separated)")->delimiter(',');
    app->add_option("--noise", o.noises, "Bit-flip noise levels (comma separated)")
        ->delimiter(',');
  } else {
    app->add_option("--density", o.densities, "Edge density")->expected(1);
    app->add_option("--samples", o.samples, "Sample size")->expected(1);
    app->add_option("--noise", o.noises, "Bit-flip noise level")->expected(1);
  }
  app->add_option("--cpt-skew", o.cpt_skew,
                  "Dirichlet concentration for CPT rows (1 = flat, <1 = skewed)");
}

void add_nsga2_flags(CLI::App* app, Options& o) {
  app->add_option("--pop-size", o.pop_size, "Population size (even, >= 4)");
  app->add_option("--generations", o.generations, "Number of generations");
  app->add_option("--pmu", o.pmu, "Per-bit mutation rate (default 1/(n(n-1)))");
  app->add_option("--pchi", o.pchi, "Crossover probability");
  app->add_option("--init-density", o.init_density, "Bit density of initial genomes");
  app->add_option("--crossover", o.crossover, "single-point or uniform")
      ->check(CLI::IsMember({"single-point", "uniform"}));
}

void add_hc_flags(CLI::App* app, Options& o, bool multi_score) {
  auto* s = app->add_option("--score", o.scores, multi_score
                                                     ? "Baseline scores (comma separated)"
                                                     : "Score: aic or bic");
  s->check(CLI::IsMember({"aic", "bic"}));
  if (multi_score) s->delimiter(',');
  else s->expected(1);
  app->add_option("--complexity", o.complexity, "Penalty size: parameters or edges")
      ->check(CLI::IsMember({"parameters", "edges"}));
  app->add_option("--max-iterations", o.max_iterations, "Maximum accepted moves");
  app->add_option("--restarts", o.restarts, "Random restarts after the empty-graph run");
}

void add_run_flags(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--out-dir", o.out_dir, "Output directory");
  app->add_option("--threads", o.threads, "Worker threads")->check(CLI::NonNegativeNumber);
}

Nsga2Config nsga2_config(const Options& o) {
  Nsga2Config c;
  c.population_size = o.pop_size;
  c.generations = o.generations;
  c.p_mu = o.pmu;
  c.p_chi = o.pchi;
  c.init_density = o.init_density;
  c.crossover = parse_crossover(o.crossover);
  c.seed = o.seed;
  c.exec = o.threads == 1 ? ExecPolicy::Serial : ExecPolicy::Parallel;
  return c;
}

HcConfig hc_config(const Options& o, const std::string& score) {
  HcConfig c;
  c.score = parse_score_kind(score);
  c.complexity = parse_complexity(o.complexity);
  c.max_iterations = o.max_iterations;
  c.restarts = o.restarts;
  c.seed = o.seed;
  c.exec = o.threads == 1 ? ExecPolicy::Serial : ExecPolicy::Parallel;
  return c;
}

ScenarioConfig scenario_config(const Options& o) {
  ScenarioConfig c;
  c.n = o.nodes;
  c.density = o.densities.at(0);
  c.m = o.samples.at(0);
  c.noise = o.noises.at(0);
  c.seed = o.seed;
  return c;
}

void apply_threads(const Options& o) {
  if (o.threads > 0) set_thread_count(o.threads);
}

int cmd_generate(const Options& o) {
  const ScenarioConfig sc = scenario_config(o);
  sc.validate();
  if (!(o.cpt_skew > 0.0)) throw std::invalid_argument("--cpt-skew must be positive");
  Rng rng(o.seed);
  const Dag dag = random_dag(sc.n, sc.density, rng);
  const BayesianNetwork bn = random_cpts(dag, std::vector<int>(sc.n, 2), rng, o.cpt_skew);
  const Dataset clean = forward_sample(bn, sc.m, rng);
  const Dataset noisy = inject_noise(clean, sc.noise, rng);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_file(dir / "truth.json", network_to_json(bn).dump(2) + "\n");
  write_file(dir / "truth.dot", to_dot(dag, "truth"));
  std::ostringstream d, c;
  write_dataset_csv(d, noisy);
  write_dataset_csv(c, clean);
  write_file(dir / "data.csv", d.str());
  write_file(dir / "clean.csv", c.str());
  std::cout << "wrote " << (dir / "truth.json").string() << " and "
            << (dir / "data.csv").string() << " (" << dag.edge_count() << " edges, "
            << sc.m << " samples)\n";
  return 0;
}

int cmd_learn_nsga2(const Options& o) {
  const Nsga2Config cfg = nsga2_config(o);
  cfg.validate();
  apply_threads(o);
  const Dataset data = read_dataset_file(o.data);
  Rng rng(o.seed);
  const EvolveResult res = evolve(data, cfg, rng);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_file(dir / "front.json", front_to_json(res.front).dump(2) + "\n");
  std::ostringstream trace;
  write_trace_csv(trace, res.trace);
  write_file(dir / "trace.csv", trace.str());
  const FrontSummary summary = front_summary(res.front);
  for (std::size_t s = 0; s < summary.representatives.size(); ++s) {
    const auto& ind = summary.representatives[s];
    write_file(dir / ("front_slot" + std::to_string(s) + ".dot"),
               to_dot(ind.dag, "slot" + std::to_string(s)));
  }
  std::cout << "front size " << res.front.members.size() << "\n";
  for (const auto& m : res.front.members)
    std::cout << "  arcs " << m.objectives.arcs << "  ll "
              << format_double(m.objectives.log_likelihood) << "\n";
  return 0;
}

int cmd_learn_hc(const Options& o) {
  const HcConfig cfg = hc_config(o, o.scores.at(0));
  cfg.validate();
  apply_threads(o);
  const Dataset data = read_dataset_file(o.data);
  Rng rng(o.seed);
  const HcResult res = hill_climb(data, cfg, rng);

  json j = network_to_json(fit_ml_parameters(res.dag, data));
  j["score_kind"] = std::string(to_string(cfg.score));
  j["complexity"] = std::string(to_string(cfg.complexity));
  j["score_value"] = res.score;
  j["log_likelihood"] = log_likelihood(res.dag, data);
  j["iterations"] = res.iterations;
  j["restarts_used"] = res.restarts_used;

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const std::string stem = "hc_" + std::string(to_string(cfg.score));
  write_file(dir / (stem + ".json"), j.dump(2) + "\n");
  write_file(dir / (stem + ".dot"), to_dot(res.dag, stem));
  std::cout << stem << ": " << res.dag.edge_count() << " edges, score "
            << format_double(res.score) << ", " << res.iterations << " moves\n";
  return 0;
}

json metrics_json(const StructuralConfusion& c) {
  const StructuralMetrics m = metrics(c);
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn},
          {"precision", opt(m.precision)}, {"recall", opt(m.recall)},
          {"specificity", opt(m.specificity)}};
}

int cmd_evaluate(const Options& o) {
  const NetworkFile truth = network_from_json(read_json_file(o.truth));
  const json learned = read_json_file(o.learned);
  std::optional<Dataset> data;
  if (!o.data.empty()) data = read_dataset_file(o.data);

  std::vector<Dag> dags;
  if (learned.is_array()) {
    for (const auto& m : front_from_json(learned, truth.dag.size()).members)
      dags.push_back(m.dag);
  } else {
    dags.push_back(network_from_json(learned).dag);
  }

  json out = json::array();
  for (const Dag& d : dags) {
    if (d.size() != truth.dag.size())
      throw std::invalid_argument("learned and truth networks differ in size");
    json e = metrics_json(structural_confusion(d, truth.dag));
    e["edges"] = d.edge_count();
    if (data) e["log_likelihood"] = log_likelihood(d, *data);
    out.push_back(std::move(e));
  }
  json result = {{"solutions", out}};
  if (data) result["truth_log_likelihood"] = log_likelihood(truth.dag, *data);
  result["truth_edges"] = truth.dag.edge_count();
  std::cout << result.dump(2) << "\n";
  return 0;
}

int cmd_experiment(const Options& o) {
  ExperimentGrid g;
  g.n = o.nodes;
  g.densities = o.densities;
  g.sample_sizes = o.samples;
  g.noises = o.noises;
  g.repetitions = o.reps;
  g.master_seed = o.seed;
  g.threads = o.threads;
  g.learners.nsga2 = nsga2_config(o);
  g.learners.nsga2.exec = ExecPolicy::Serial;  // repetitions carry the parallelism
  g.learners.hc.clear();
  for (const auto& s : o.scores) {
    HcConfig hc = hc_config(o, s);
    hc.exec = ExecPolicy::Serial;
    g.learners.hc.push_back(hc);
  }
  g.learners.cpt_concentration = o.cpt_skew;
  g.validate();

  const GridResult res = run_grid(g, o.out_dir);
  for (const auto& r : res.reports) {
    std::cout << "scenario " << r.scenario_id << ": density " << r.config.density
              << ", samples " << r.config.m << ", noise " << r.config.noise;
    for (const auto& [name, rate] : r.dominance_rates)
      std::cout << ", front dominates " << name << " " << rate;
    std::cout << ", front dominates truth " << r.truth_dominance_rate;
    if (r.failed_repetitions) std::cout << ", failed " << r.failed_repetitions;
    std::cout << "\n";
  }
  std::cout << "metrics: " << res.metrics_csv.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian network structure learning with NSGA-II and HC baselines"};
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Random network, samples and noisy copy");
  add_scenario_flags(gen, o, false);
  add_run_flags(gen, o);

  auto* nsga = app.add_subcommand("learn-nsga2", "Pareto front of structures for a dataset");
  nsga->add_option("--data", o.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  add_nsga2_flags(nsga, o);
  add_run_flags(nsga, o);

  auto* hc = app.add_subcommand("learn-hc", "AIC/BIC hill climbing on a dataset");
  hc->add_option("--data", o.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  add_hc_flags(hc, o, false);
  add_run_flags(hc, o);

  auto* ev = app.add_subcommand("evaluate", "Compare learned structures with a ground truth");
  ev->add_option("--truth", o.truth, "Ground-truth network JSON")
      ->required()
      ->check(CLI::ExistingFile);
  ev->add_option("--learned", o.learned, "Learned network JSON or front JSON")
      ->required()
      ->check(CLI::ExistingFile);
  ev->add_option("--data", o.data, "Dataset CSV for log-likelihoods")
      ->check(CLI::ExistingFile);

  auto* ex = app.add_subcommand("experiment", "Run a scenario grid with repetitions");
  o.scores = {"aic", "bic"};
  add_scenario_flags(ex, o, true);
  add_nsga2_flags(ex, o);
  add_hc_flags(ex, o, true);
  add_run_flags(ex, o);
  ex->add_option("--reps", o.reps, "Repetitions per scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  // learn-hc takes one score; its default differs from the experiment list.
  if (hc->parsed() && hc->count("--score") == 0) o.scores = {"bic"};

  try {
    if (gen->parsed()) return cmd_generate(o);
    if (nsga->parsed()) return cmd_learn_nsga2(o);
    if (hc->parsed()) return cmd_learn_hc(o);
    if (ev->parsed()) return cmd_evaluate(o);
    if (ex->parsed()) return cmd_experiment(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
