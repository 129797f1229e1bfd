#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crosstrainer/dataset.hpp"
#include "crosstrainer/linmodel.hpp"
#include "crosstrainer/unimodal.hpp"

namespace crosstrainer {

enum class SearchStrategy { kGss, kGrid, kRandom };

const char* strategy_name(SearchStrategy s);

struct ProbeRecord {
  double alpha = 0.0;
  double cv_accuracy = 0.0;
  double train_seconds = 0.0;  // summed over folds
  std::size_t epochs_total = 0;
};

// Deterministic map alpha -> k-fold cross-validated target accuracy. Folds
// are fixed once per evaluator so every alpha sees the same partition. Each
// fold trains on its target share plus the full source; evaluations are
// cached, and cached fold coefficients from the nearest probed alpha seed
// warm starts. Run each search on a fresh evaluator.
class AlphaEvaluator {
 public:
  AlphaEvaluator(const Dataset& target_train, const Dataset& source, std::size_t k,
                 const TrainConfig& cfg, std::uint64_t seed, bool warm_start = true);

  double cv_accuracy(double alpha);
  double operator()(double alpha) { return cv_accuracy(alpha); }

  std::size_t eval_count() const { return probes_.size(); }
  const std::vector<ProbeRecord>& probes() const { return probes_; }
  bool warm_start_enabled() const { return warm_start_; }
  std::size_t fold_count() const { return k_; }
  const TrainConfig& config() const { return cfg_; }

  struct Refit {
    LinearModel model;
    TrainStats stats;
    double seconds = 0.0;
  };
  // Retrains at alpha on the full target training set plus source, warm
  // started from the cache when enabled.
  Refit refit(double alpha) const;

 private:
  struct CacheEntry {
    double accuracy = 0.0;
    std::vector<LinearModel> fold_models;
  };
  const CacheEntry* lookup(double alpha) const;   // within 1e-12 of a probed alpha
  const CacheEntry* nearest(double alpha) const;  // closest probed alpha, if any

  const Dataset& target_;
  const Dataset& source_;
  std::size_t k_;
  TrainConfig cfg_;
  std::uint64_t seed_;
  bool warm_start_;
  std::vector<Dataset> fold_train_;  // target fold share + all source rows
  std::vector<Dataset> fold_valid_;
  std::vector<std::size_t> fold_n_target_;
  std::map<double, CacheEntry> cache_;
  std::vector<ProbeRecord> probes_;
};

struct SearchReport {
  SearchStrategy strategy = SearchStrategy::kGss;
  double delta = 0.0;
  double alpha_star = 0.0;
  double alpha_star_accuracy = 0.0;
  std::vector<ProbeRecord> probes;  // one per trained alpha, evaluation order
  std::size_t bracket_evals = 0;    // gss phases
  std::size_t golden_evals = 0;
  LinearModel final_model;  // refit at alpha_star on full target train + source
  TrainStats refit_stats;
  double refit_seconds = 0.0;

  double total_train_seconds() const;
  std::size_t total_epochs() const;
};

using unimodal::Bracket;

// Algorithm pieces exposed on the evaluator (see unimodal.hpp for the
// objective-generic versions used by tests and the bound module).
Bracket find_bracket(AlphaEvaluator& eval, double l, double r, double delta);
double golden_section_search(AlphaEvaluator& eval, double l, double m, double r, double delta);

// Bracket + endpoint check + golden section; refits the final model.
SearchReport find_weighting(AlphaEvaluator& eval, double delta);

// Evaluates alpha in {0, delta, 2*delta, ..., 1}; ties go to the smaller alpha.
SearchReport grid_search(AlphaEvaluator& eval, double delta);

SearchReport random_search(AlphaEvaluator& eval, std::size_t n_probes, std::uint64_t seed);

}  // namespace crosstrainer
