// Command-line front end: fit, benchmark, sweep-sigma, search-trace, bound.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crosstrainer/benchmark.hpp"
#include "crosstrainer/bound.hpp"
#include "crosstrainer/dataset.hpp"
#include "crosstrainer/errors.hpp"
#include "crosstrainer/reporting.hpp"

namespace ct = crosstrainer;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct DataArgs {
  std::string target_path;
  std::string source_path;
  bool synthetic = false;
  std::size_t n_target = 2500;
  std::size_t n_source = 20000;
  std::size_t d = 500;
  double sigma = 2.0;
  double noise_sd = 1.0;
  std::string format = "auto";
  std::string label_column;
  bool standardize = false;
};

struct RunArgs {
  double delta = 0.01;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  std::string strategy = "gss";
  double l2 = -1.0;  // negative: tune on the All baseline
  std::size_t random_probes = 100;
  std::string out;
  ct::TrainConfig train;
};

void add_data_flags(CLI::App* cmd, DataArgs& d) {
  cmd->add_option("--target", d.target_path, "Target dataset file (CSV or sparse)");
  cmd->add_option("--source", d.source_path, "Source dataset file (CSV or sparse)");
  cmd->add_flag("--synthetic", d.synthetic, "Generate the synthetic benchmark pair instead");
  cmd->add_option("--n-target", d.n_target, "Synthetic: target rows")->capture_default_str();
  cmd->add_option("--n-source", d.n_source, "Synthetic: source rows")->capture_default_str();
  cmd->add_option("--d", d.d, "Synthetic: dimensions")->capture_default_str();
  cmd->add_option("--sigma", d.sigma, "Synthetic: source labeling-weight spread")
      ->capture_default_str();
  cmd->add_option("--noise-sd", d.noise_sd, "Synthetic: label noise standard deviation")
      ->capture_default_str();
  cmd->add_option("--format", d.format, "Input format: auto|csv|sparse")
      ->check(CLI::IsMember({"auto", "csv", "sparse"}))
      ->capture_default_str();
  cmd->add_option("--label-column", d.label_column,
                  "CSV label column name (default: last column)");
  cmd->add_flag("--standardize", d.standardize,
                "Z-score features per column, fit on combined training data");
}

void add_run_flags(CLI::App* cmd, RunArgs& r) {
  cmd->add_option("--delta", r.delta, "Alpha search precision")->capture_default_str();
  cmd->add_option("--k", r.k, "Cross-validation folds")->capture_default_str();
  cmd->add_option("--seed", r.seed, "Random seed")->capture_default_str();
  cmd->add_option("--l2", r.l2, "Fixed l2 penalty (default: tune on the All baseline)");
  cmd->add_option("--out", r.out, "Write a JSON report here");
  cmd->add_option("--eta0", r.train.eta0, "SGD initial learning rate")->capture_default_str();
  cmd->add_option("--decay", r.train.decay, "SGD inverse-scaling decay")->capture_default_str();
  cmd->add_option("--max-epochs", r.train.max_epochs, "SGD epoch cap")->capture_default_str();
  cmd->add_option("--tolerance", r.train.tolerance, "SGD relative improvement tolerance")
      ->capture_default_str();
  cmd->add_option("--patience", r.train.patience, "SGD stagnant epochs before stopping")
      ->capture_default_str();
  cmd->add_option("--batch-size", r.train.batch_size, "SGD minibatch size")
      ->capture_default_str();
}

ct::TableFormat parse_format(const std::string& f) {
  if (f == "csv") return ct::TableFormat::kCsv;
  if (f == "sparse") return ct::TableFormat::kSparse;
  return ct::TableFormat::kAuto;
}

struct Inputs {
  ct::Dataset target;
  ct::Dataset source;
};

Inputs load_inputs(const DataArgs& d, std::uint64_t seed) {
  if (d.synthetic) {
    ct::SyntheticConfig cfg{d.n_target, d.n_source, d.d, d.sigma, d.noise_sd, seed};
    auto pair = ct::generate_synthetic(cfg);
    return {std::move(pair.target), std::move(pair.source)};
  }
  if (d.target_path.empty() || d.source_path.empty())
    throw ct::validation_error("provide --target and --source files, or --synthetic");
  Inputs in;
  in.target = ct::load_table(d.target_path, parse_format(d.format), d.label_column);
  in.source = ct::load_table(d.source_path, parse_format(d.format), d.label_column);
  if (in.target.n_cols != in.source.n_cols)
    throw ct::validation_error("target and source dimensions differ");
  return in;
}

double resolve_l2(const RunArgs& r, const ct::Dataset& target, const ct::Dataset& source,
                  bool* tuned) {
  if (r.l2 >= 0.0) {
    *tuned = false;
    return r.l2;
  }
  *tuned = true;
  ct::BenchmarkOptions defaults;
  return ct::tune_l2_on_all(target, source, r.k, r.train, defaults.l2_grid, r.seed);
}

void atomic_save_model(const ct::LinearModel& model, const ct::TrainConfig& cfg,
                       const std::string& path) {
  std::string tmp = path + ".tmp";
  ct::save_model(model, cfg, tmp);
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ct::io_error("cannot move '" + tmp + "' to '" + path + "'");
}

ct::SearchReport run_strategy(ct::AlphaEvaluator& eval, const RunArgs& r) {
  if (r.strategy == "grid") return ct::grid_search(eval, r.delta);
  if (r.strategy == "random") return ct::random_search(eval, r.random_probes, r.seed);
  return ct::find_weighting(eval, r.delta);
}

int cmd_fit(const DataArgs& dargs, const RunArgs& rargs, const std::string& model_out) {
  Inputs in = load_inputs(dargs, rargs.seed);
  if (dargs.standardize) {
    ct::Standardizer z;
    z.fit(in.target, in.source);
    z.apply(in.target);
    z.apply(in.source);
  }
  ct::TrainConfig cfg = rargs.train;
  cfg.seed = rargs.seed;
  bool tuned = false;
  RunArgs r = rargs;
  r.train = cfg;
  cfg.l2_penalty = resolve_l2(r, in.target, in.source, &tuned);
  r.train = cfg;

  ct::AlphaEvaluator eval(in.target, in.source, r.k, cfg, r.seed, true);
  ct::SearchReport report = run_strategy(eval, r);

  ct::print_probe_lines(std::cout, report);
  atomic_save_model(report.final_model, cfg, model_out);
  std::cout << "model written to " << model_out << "\n";

  if (!r.out.empty()) {
    ct::json j{{"command", "fit"},
               {"config",
                {{"delta", r.delta},
                 {"k", r.k},
                 {"seed", r.seed},
                 {"strategy", r.strategy},
                 {"l2_penalty", cfg.l2_penalty},
                 {"l2_tuned", tuned},
                 {"standardize", dargs.standardize}}},
               {"data",
                {{"n_target", in.target.n_rows},
                 {"n_source", in.source.n_rows},
                 {"d", in.target.n_cols}}},
               {"alpha_star", report.alpha_star},
               {"search", ct::to_json(report)}};
    ct::write_json(j, r.out);
  }
  return 0;
}

struct SplitArgs {
  double test_fraction = 0.2;
  std::size_t downsample_target = 0;  // 0: keep everything
};

struct BenchmarkData {
  ct::Dataset train;
  ct::Dataset test;
  ct::Dataset source;
};

BenchmarkData prepare_benchmark_data(Inputs in, const SplitArgs& s, bool standardize,
                                     std::uint64_t seed) {
  auto split = ct::split_train_test(in.target, s.test_fraction, seed);
  BenchmarkData out{std::move(split.train), std::move(split.test), std::move(in.source)};
  if (s.downsample_target != 0)
    out.train = ct::downsample(out.train, s.downsample_target, seed);
  if (standardize) {
    ct::Standardizer z;
    z.fit(out.train, out.source);
    z.apply(out.train);
    z.apply(out.source);
    z.apply(out.test);
  }
  return out;
}

int cmd_benchmark(const DataArgs& dargs, const RunArgs& rargs, const SplitArgs& sargs,
                  bool no_timing) {
  BenchmarkData data =
      prepare_benchmark_data(load_inputs(dargs, rargs.seed), sargs, dargs.standardize, rargs.seed);

  ct::BenchmarkOptions options;
  options.delta = rargs.delta;
  options.k = rargs.k;
  options.seed = rargs.seed;
  options.train = rargs.train;
  options.train.seed = rargs.seed;
  options.with_timing = !no_timing;
  if (rargs.l2 >= 0.0) {
    options.tune_l2 = false;
    options.train.l2_penalty = rargs.l2;
  }

  ct::BenchmarkReport report = ct::run_benchmark(data.train, data.test, data.source, options);
  ct::print_benchmark_table(std::cout, report);

  if (!rargs.out.empty()) {
    ct::json j;
    j["command"] = "benchmark";
    ct::json body = ct::to_json(report);
    for (auto& [key, value] : body.items()) j[key] = value;
    ct::write_json(j, rargs.out);
  }
  return 0;
}

int cmd_sweep_sigma(const DataArgs& dargs, const RunArgs& rargs, const SplitArgs& sargs,
                    const std::vector<double>& sigmas) {
  if (!dargs.synthetic)
    throw ct::validation_error("sweep-sigma varies the synthetic generator; pass --synthetic");
  if (sigmas.empty()) throw ct::validation_error("provide at least one sigma");
  for (double s : sigmas)
    if (s < 0.0) throw ct::validation_error("sigma values must be non-negative");

  ct::json runs = ct::json::array();
  std::cout << std::left << std::setw(8) << "sigma";
  bool header_done = false;

  std::vector<ct::BenchmarkReport> reports;
  for (double sigma : sigmas) {
    DataArgs d = dargs;
    d.sigma = sigma;  // same seed: target stays fixed, source labeling shifts
    BenchmarkData data =
        prepare_benchmark_data(load_inputs(d, rargs.seed), sargs, dargs.standardize, rargs.seed);
    ct::BenchmarkOptions options;
    options.delta = rargs.delta;
    options.k = rargs.k;
    options.seed = rargs.seed;
    options.train = rargs.train;
    options.train.seed = rargs.seed;
    options.with_timing = false;
    if (rargs.l2 >= 0.0) {
      options.tune_l2 = false;
      options.train.l2_penalty = rargs.l2;
    }
    reports.push_back(ct::run_benchmark(data.train, data.test, data.source, options));
    const auto& rep = reports.back();
    if (!header_done) {
      for (const auto& m : rep.methods) std::cout << std::setw(14) << m.method_name;
      std::cout << std::setw(12) << "alpha_star" << "\n";
      header_done = true;
    }
    std::cout << std::left << std::setw(8) << std::setprecision(4) << sigma;
    for (const auto& m : rep.methods)
      std::cout << std::setw(14) << std::fixed << std::setprecision(4) << m.test_accuracy;
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setw(12) << std::setprecision(4) << rep.alpha_star << "\n";
    ct::json run;
    run["sigma"] = sigma;
    ct::json body = ct::to_json(rep);
    for (auto& [key, value] : body.items()) run[key] = value;
    runs.push_back(run);
  }

  if (!rargs.out.empty()) {
    ct::json j{{"command", "sweep-sigma"}, {"sigmas", sigmas}, {"runs", runs}};
    ct::write_json(j, rargs.out);
  }
  return 0;
}

ct::json trace_json(const ct::SearchReport& r) {
  ct::json series = ct::json::array();
  double best = -1.0;
  std::size_t i = 0;
  for (const auto& p : r.probes) {
    best = std::max(best, p.cv_accuracy);
    series.push_back(ct::json{{"iteration", ++i},
                              {"alpha", p.alpha},
                              {"cv_accuracy", p.cv_accuracy},
                              {"best_so_far", best}});
  }
  return series;
}

int cmd_search_trace(const DataArgs& dargs, const RunArgs& rargs) {
  Inputs in = load_inputs(dargs, rargs.seed);
  if (dargs.standardize) {
    ct::Standardizer z;
    z.fit(in.target, in.source);
    z.apply(in.target);
    z.apply(in.source);
  }
  ct::TrainConfig cfg = rargs.train;
  cfg.seed = rargs.seed;
  bool tuned = false;
  RunArgs r = rargs;
  cfg.l2_penalty = resolve_l2(r, in.target, in.source, &tuned);

  ct::json traces;
  for (const char* strategy : {"gss", "grid", "random"}) {
    ct::AlphaEvaluator eval(in.target, in.source, r.k, cfg, r.seed, true);
    RunArgs sr = r;
    sr.strategy = strategy;
    sr.train = cfg;
    ct::SearchReport report = run_strategy(eval, sr);
    double best = -1.0;
    std::size_t i = 0;
    for (const auto& p : report.probes) {
      best = std::max(best, p.cv_accuracy);
      std::cout << "trace " << strategy << " " << ++i << " alpha=" << std::setprecision(10)
                << p.alpha << " cv_accuracy=" << p.cv_accuracy << " best_so_far=" << best
                << "\n";
    }
    std::cout << "trace " << strategy << " alpha_star=" << report.alpha_star
              << " evaluations=" << report.probes.size() << "\n";
    traces[strategy] = trace_json(report);
  }

  if (!r.out.empty()) {
    ct::json j{{"command", "search-trace"},
               {"config",
                {{"delta", r.delta},
                 {"k", r.k},
                 {"seed", r.seed},
                 {"random_probes", r.random_probes},
                 {"l2_penalty", cfg.l2_penalty},
                 {"l2_tuned", tuned}}},
               {"traces", traces}};
    ct::write_json(j, r.out);
  }
  return 0;
}

int cmd_bound(double beta, double a_const, double b_const, double tol, double grid_step,
              const std::string& out) {
  ct::BoundParams p{beta, a_const, b_const};
  double alpha_g = ct::minimize_g(p, tol);
  bool convex = ct::convexity_check(p, grid_step);
  std::cout << "alpha     g(alpha)\n";
  ct::json table = ct::json::array();
  for (std::size_t i = 0;; ++i) {
    double a = std::min(static_cast<double>(i) * grid_step, 1.0);
    double g = ct::g_alpha(a, p);
    std::cout << std::fixed << std::setprecision(6) << a << "  " << std::setprecision(10) << g
              << "\n";
    std::cout.unsetf(std::ios::fixed);
    table.push_back(ct::json{{"alpha", a}, {"g", g}});
    if (a >= 1.0) break;
  }
  std::cout << "alpha_g " << std::setprecision(10) << alpha_g << "\n";
  std::cout << "convex " << (convex ? "true" : "false") << "\n";
  if (!out.empty()) {
    ct::json j{{"command", "bound"},
               {"params", {{"beta", beta}, {"A", a_const}, {"B", b_const}}},
               {"alpha_g", alpha_g},
               {"convex", convex},
               {"table", table}};
    ct::write_json(j, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain-adaptation trainer: loss reweighting with tuned alpha"};
  app.require_subcommand(1);

  DataArgs dargs;
  RunArgs rargs;
  SplitArgs sargs;
  std::string model_out = "crosstrainer_model.txt";
  bool no_timing = false;
  std::vector<double> sigmas;
  double bound_beta = 0.5, bound_a = 1.0, bound_b = 1.0, bound_tol = 1e-4,
         bound_step = 0.01;
  std::string bound_out;

  CLI::App* fit = app.add_subcommand("fit", "Tune alpha and train the final model");
  add_data_flags(fit, dargs);
  add_run_flags(fit, rargs);
  fit->add_option("--strategy", rargs.strategy, "gss|grid|random")
      ->check(CLI::IsMember({"gss", "grid", "random"}))
      ->capture_default_str();
  fit->add_option("--random-probes", rargs.random_probes, "Probes for --strategy random")
      ->capture_default_str();
  fit->add_option("--model-out", model_out, "Model file path")->capture_default_str();

  CLI::App* bench = app.add_subcommand("benchmark", "Compare methods on a held-out split");
  add_data_flags(bench, dargs);
  add_run_flags(bench, rargs);
  bench->add_option("--test-fraction", sargs.test_fraction, "Held-out target fraction")
      ->capture_default_str();
  bench->add_option("--downsample-target", sargs.downsample_target,
                    "Downsample the target training rows (0 = keep all)");
  bench->add_flag("--no-timing", no_timing, "Skip the grid/cold timing comparison");

  CLI::App* sweep = app.add_subcommand("sweep-sigma", "Benchmark across source divergences");
  add_data_flags(sweep, dargs);
  add_run_flags(sweep, rargs);
  sweep->add_option("--test-fraction", sargs.test_fraction, "Held-out target fraction")
      ->capture_default_str();
  sweep->add_option("--downsample-target", sargs.downsample_target,
                    "Downsample the target training rows (0 = keep all)");
  sweep->add_option("--sigmas", sigmas, "Sigma values to benchmark")->delimiter(',')->required();

  CLI::App* trace = app.add_subcommand("search-trace", "Per-iteration strategy comparison");
  add_data_flags(trace, dargs);
  add_run_flags(trace, rargs);
  trace->add_option("--random-probes", rargs.random_probes, "Probes for the random strategy")
      ->capture_default_str();

  CLI::App* bound = app.add_subcommand("bound", "Evaluate the error-bound curve g(alpha)");
  bound->add_option("--beta", bound_beta, "Target fraction of training data")
      ->capture_default_str();
  bound->add_option("--A", bound_a, "Divergence constant")->capture_default_str();
  bound->add_option("--B", bound_b, "Complexity constant")->capture_default_str();
  bound->add_option("--tol", bound_tol, "Minimizer precision")->capture_default_str();
  bound->add_option("--grid-step", bound_step, "Table and convexity grid step")
      ->capture_default_str();
  bound->add_option("--out", bound_out, "Write a JSON report here");

  try {
    app.parse(argc, argv);
    if (fit->parsed()) return cmd_fit(dargs, rargs, model_out);
    if (bench->parsed()) return cmd_benchmark(dargs, rargs, sargs, no_timing);
    if (sweep->parsed()) return cmd_sweep_sigma(dargs, rargs, sargs, sigmas);
    if (trace->parsed()) return cmd_search_trace(dargs, rargs);
    if (bound->parsed())
      return cmd_bound(bound_beta, bound_a, bound_b, bound_tol, bound_step, bound_out);
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const ct::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ct::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ct::format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
