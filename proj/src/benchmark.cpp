#include "crosstrainer/benchmark.hpp"

#include <chrono>

#include "crosstrainer/errors.hpp"
#include "crosstrainer/reweight.hpp"

namespace crosstrainer {

const MethodResult* BenchmarkReport::method(const std::string& name) const {
  for (const auto& m : methods)
    if (m.method_name == name) return &m;
  return nullptr;
}

double tune_l2_on_all(const Dataset& target_train, const Dataset& source, std::size_t k,
                      const TrainConfig& base, const std::vector<double>& grid,
                      std::uint64_t seed) {
  if (grid.empty()) throw validation_error("l2 grid must not be empty");
  auto folds = kfold_indices(target_train.n_rows, k, seed);
  std::vector<Dataset> fold_train, fold_valid;
  for (const auto& fold : folds) {
    fold_train.push_back(concat_rows(target_train.select_rows(fold.train), source));
    fold_valid.push_back(target_train.select_rows(fold.validation));
  }
  double best_l2 = grid.front();
  double best_acc = -1.0;
  for (double l2 : grid) {
    TrainConfig cfg = base;
    cfg.l2_penalty = l2;
    double acc_sum = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
      std::vector<double> weights(fold_train[f].n_rows, 1.0);  // All baseline: alpha = beta
      TrainResult res = train_sgd(fold_train[f], weights, cfg);
      acc_sum += accuracy(res.model, fold_valid[f]);
    }
    double acc = acc_sum / static_cast<double>(k);
    if (acc > best_acc) {
      best_acc = acc;
      best_l2 = l2;
    }
  }
  return best_l2;
}

BenchmarkReport run_benchmark(const Dataset& target_train, const Dataset& target_test,
                              const Dataset& source, const BenchmarkOptions& options) {
  if (target_test.n_rows == 0) throw validation_error("benchmark needs a non-empty test set");
  if (target_train.n_cols != target_test.n_cols)
    throw validation_error("train and test dimensions differ");

  BenchmarkReport report;
  report.delta = options.delta;
  report.k = options.k;
  report.seed = options.seed;
  report.n_target_train = target_train.n_rows;
  report.n_target_test = target_test.n_rows;
  report.n_source = source.n_rows;
  report.dim = target_train.n_cols;
  report.beta = static_cast<double>(target_train.n_rows) /
                static_cast<double>(target_train.n_rows + source.n_rows);

  TrainConfig cfg = options.train;
  if (options.tune_l2) {
    cfg.l2_penalty =
        tune_l2_on_all(target_train, source, options.k, cfg, options.l2_grid, options.seed);
    report.l2_tuned = true;
  }
  report.l2_used = cfg.l2_penalty;

  auto score = [&](const SearchReport& sr, const char* name) {
    MethodResult row;
    row.method_name = name;
    row.model = sr.final_model;
    row.test_accuracy = accuracy(sr.final_model, target_test);
    row.fit_seconds = sr.total_train_seconds() + sr.refit_seconds;
    return row;
  };

  report.methods.push_back(
      fit_baseline(BaselineKind::kTarget, target_train, source, target_test, cfg));
  report.methods.push_back(
      fit_baseline(BaselineKind::kSource, target_train, source, target_test, cfg));
  report.methods.push_back(
      fit_baseline(BaselineKind::kAll, target_train, source, target_test, cfg));

  {
    AlphaEvaluator eval(target_train, source, options.k, cfg, options.seed, true);
    report.gss_report = find_weighting(eval, options.delta);
    report.alpha_star = report.gss_report.alpha_star;
    report.methods.push_back(score(report.gss_report, "crosstrainer"));
  }

  if (options.with_timing) {
    {
      AlphaEvaluator eval(target_train, source, options.k, cfg, options.seed, false);
      report.grid_report = grid_search(eval, options.delta);
      report.methods.push_back(score(*report.grid_report, "crosstrainer_unopt"));
    }
    {
      AlphaEvaluator eval(target_train, source, options.k, cfg, options.seed, false);
      report.gss_cold_report = find_weighting(eval, options.delta);
    }
    auto& t = report.timing;
    t.grid_cold_seconds = report.grid_report->total_train_seconds();
    t.gss_cold_seconds = report.gss_cold_report->total_train_seconds();
    t.gss_warm_seconds = report.gss_report.total_train_seconds();
    t.grid_cold_epochs = report.grid_report->total_epochs();
    t.gss_cold_epochs = report.gss_cold_report->total_epochs();
    t.gss_warm_epochs = report.gss_report.total_epochs();
    if (t.gss_cold_seconds > 0.0) t.speedup_gss_only = t.grid_cold_seconds / t.gss_cold_seconds;
    if (t.gss_warm_seconds > 0.0) t.speedup_total = t.grid_cold_seconds / t.gss_warm_seconds;
  }

  if (options.with_competing) {
    report.methods.push_back(fit_pred(target_train, source, target_test, cfg));
    report.methods.push_back(fit_import(target_train, source, target_test, cfg));
    report.methods.push_back(fit_feataug(target_train, source, target_test, cfg));
  }

  return report;
}

}  // namespace crosstrainer
