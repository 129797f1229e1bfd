#include "crosstrainer/search.hpp"

#include <chrono>
#include <cmath>

#include "crosstrainer/errors.hpp"
#include "crosstrainer/reweight.hpp"
#include "crosstrainer/rng.hpp"

namespace crosstrainer {

namespace {

constexpr double kAlphaCoincideEps = 1e-12;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) throw validation_error("delta must lie in (0, 0.5]");
}

}  // namespace

const char* strategy_name(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::kGss: return "gss";
    case SearchStrategy::kGrid: return "grid";
    case SearchStrategy::kRandom: return "random";
  }
  return "?";
}

double SearchReport::total_train_seconds() const {
  double s = 0.0;
  for (const auto& p : probes) s += p.train_seconds;
  return s;
}

std::size_t SearchReport::total_epochs() const {
  std::size_t e = 0;
  for (const auto& p : probes) e += p.epochs_total;
  return e;
}

AlphaEvaluator::AlphaEvaluator(const Dataset& target_train, const Dataset& source,
                               std::size_t k, const TrainConfig& cfg, std::uint64_t seed,
                               bool warm_start)
    : target_(target_train),
      source_(source),
      k_(k),
      cfg_(cfg),
      seed_(seed),
      warm_start_(warm_start) {
  if (target_.n_cols != source_.n_cols)
    throw validation_error("target and source dimensions differ");
  auto folds = kfold_indices(target_.n_rows, k_, seed_);
  fold_train_.reserve(k_);
  fold_valid_.reserve(k_);
  for (const auto& fold : folds) {
    fold_train_.push_back(concat_rows(target_.select_rows(fold.train), source_));
    fold_valid_.push_back(target_.select_rows(fold.validation));
    fold_n_target_.push_back(fold.train.size());
  }
}

const AlphaEvaluator::CacheEntry* AlphaEvaluator::lookup(double alpha) const {
  auto it = cache_.lower_bound(alpha - kAlphaCoincideEps);
  if (it != cache_.end() && std::abs(it->first - alpha) <= kAlphaCoincideEps)
    return &it->second;
  return nullptr;
}

const AlphaEvaluator::CacheEntry* AlphaEvaluator::nearest(double alpha) const {
  if (cache_.empty()) return nullptr;
  auto hi = cache_.lower_bound(alpha);
  if (hi == cache_.end()) return &std::prev(hi)->second;
  if (hi == cache_.begin()) return &hi->second;
  auto lo = std::prev(hi);
  return alpha - lo->first <= hi->first - alpha ? &lo->second : &hi->second;
}

double AlphaEvaluator::cv_accuracy(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("alpha must lie in [0, 1]");
  if (const CacheEntry* hit = lookup(alpha)) return hit->accuracy;

  const CacheEntry* init_entry = warm_start_ ? nearest(alpha) : nullptr;
  CacheEntry entry;
  entry.fold_models.reserve(k_);
  ProbeRecord record;
  record.alpha = alpha;
  double acc_sum = 0.0;
  for (std::size_t f = 0; f < k_; ++f) {
    std::vector<double> weights =
        combined_alpha_weights(alpha, fold_n_target_[f], source_.n_rows);
    const LinearModel* init = init_entry ? &init_entry->fold_models[f] : nullptr;
    auto t0 = std::chrono::steady_clock::now();
    TrainResult res = train_sgd(fold_train_[f], weights, cfg_, init);
    record.train_seconds += seconds_since(t0);
    record.epochs_total += res.stats.epochs_run;
    acc_sum += accuracy(res.model, fold_valid_[f]);
    entry.fold_models.push_back(std::move(res.model));
  }
  entry.accuracy = acc_sum / static_cast<double>(k_);
  record.cv_accuracy = entry.accuracy;
  probes_.push_back(record);
  cache_.emplace(alpha, std::move(entry));
  return record.cv_accuracy;
}

// The final refit always starts cold: the shipped model must depend only on
// (data, alpha, cfg), not on the probe path that led to alpha.
AlphaEvaluator::Refit AlphaEvaluator::refit(double alpha) const {
  AlphaProblem problem = make_alpha_problem(target_, source_, alpha);
  auto t0 = std::chrono::steady_clock::now();
  TrainResult res = train_at_alpha(problem, cfg_);
  return {std::move(res.model), res.stats, seconds_since(t0)};
}

Bracket find_bracket(AlphaEvaluator& eval, double l, double r, double delta) {
  return unimodal::find_bracket(eval, l, r, delta);
}

double golden_section_search(AlphaEvaluator& eval, double l, double m, double r,
                             double delta) {
  return unimodal::golden_max(eval, Bracket{l, m, r}, delta);
}

namespace {

SearchReport finish_report(AlphaEvaluator& eval, SearchStrategy strategy, double delta,
                           double alpha_star, std::size_t probes_before) {
  SearchReport report;
  report.strategy = strategy;
  report.delta = delta;
  report.alpha_star = alpha_star;
  report.alpha_star_accuracy = eval.cv_accuracy(alpha_star);
  report.probes.assign(eval.probes().begin() + static_cast<std::ptrdiff_t>(probes_before),
                       eval.probes().end());
  AlphaEvaluator::Refit refit = eval.refit(alpha_star);
  report.final_model = std::move(refit.model);
  report.refit_stats = refit.stats;
  report.refit_seconds = refit.seconds;
  return report;
}

}  // namespace

SearchReport find_weighting(AlphaEvaluator& eval, double delta) {
  check_delta(delta);
  std::size_t before = eval.eval_count();
  Bracket br = unimodal::find_bracket(eval, 0.0, 1.0, delta);
  std::size_t bracket_evals = eval.eval_count() - before;

  double al = eval(br.left), am = eval(br.mid), ar = eval(br.right);
  double alpha_star;
  if (ar > am + unimodal::kTieEps)
    alpha_star = br.right;
  else if (al > am + unimodal::kTieEps)
    alpha_star = br.left;
  else
    alpha_star = unimodal::golden_max(eval, br, delta);

  SearchReport report = finish_report(eval, SearchStrategy::kGss, delta, alpha_star, before);
  report.bracket_evals = bracket_evals;
  report.golden_evals = eval.eval_count() - before - bracket_evals;
  return report;
}

SearchReport grid_search(AlphaEvaluator& eval, double delta) {
  check_delta(delta);
  std::size_t before = eval.eval_count();
  double best_alpha = 0.0;
  double best_acc = -1.0;
  std::size_t i = 0;
  while (true) {
    double alpha = static_cast<double>(i) * delta;
    bool last = alpha >= 1.0 - kAlphaCoincideEps;
    if (last) alpha = 1.0;
    double acc = eval(alpha);
    if (acc > best_acc) {  // strict: ties keep the smaller alpha
      best_acc = acc;
      best_alpha = alpha;
    }
    if (last) break;
    ++i;
  }
  return finish_report(eval, SearchStrategy::kGrid, delta, best_alpha, before);
}

SearchReport random_search(AlphaEvaluator& eval, std::size_t n_probes, std::uint64_t seed) {
  if (n_probes < 1) throw validation_error("random search needs at least one probe");
  std::size_t before = eval.eval_count();
  Rng rng(seed, 7);
  double best_alpha = 0.0;
  double best_acc = -1.0;
  for (std::size_t i = 0; i < n_probes; ++i) {
    double alpha = rng.uniform();
    double acc = eval(alpha);
    if (acc > best_acc) {
      best_acc = acc;
      best_alpha = alpha;
    }
  }
  SearchReport report =
      finish_report(eval, SearchStrategy::kRandom, 0.0, best_alpha, before);
  return report;
}

}  // namespace crosstrainer
