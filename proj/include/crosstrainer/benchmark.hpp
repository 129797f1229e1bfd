#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crosstrainer/dataset.hpp"
#include "crosstrainer/methods.hpp"
#include "crosstrainer/search.hpp"

namespace crosstrainer {

struct BenchmarkOptions {
  double delta = 0.01;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  TrainConfig train;
  bool tune_l2 = true;  // tune once on the All baseline, hold fixed across alpha
  std::vector<double> l2_grid = {1e-5, 1e-4, 1e-3, 1e-2};
  bool with_timing = true;     // grid-cold and gss-cold comparison runs
  bool with_competing = true;  // pred / import / feataug rows
};

struct TimingBreakdown {
  double grid_cold_seconds = 0.0;  // un-optimized reference: grid + cold starts
  double gss_cold_seconds = 0.0;   // golden-section search alone
  double gss_warm_seconds = 0.0;   // golden-section search + warm starts
  std::size_t grid_cold_epochs = 0;
  std::size_t gss_cold_epochs = 0;
  std::size_t gss_warm_epochs = 0;
  double speedup_gss_only = 0.0;  // grid_cold / gss_cold
  double speedup_total = 0.0;     // grid_cold / gss_warm
};

struct BenchmarkReport {
  // configuration echo
  double delta = 0.0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  double l2_used = 0.0;
  bool l2_tuned = false;
  // data shape
  std::size_t n_target_train = 0;
  std::size_t n_target_test = 0;
  std::size_t n_source = 0;
  std::size_t dim = 0;
  double beta = 0.0;
  // results
  double alpha_star = 0.0;
  std::vector<MethodResult> methods;  // target, source, all, crosstrainer, ...
  SearchReport gss_report;
  std::optional<SearchReport> grid_report;      // with_timing only
  std::optional<SearchReport> gss_cold_report;  // with_timing only
  TimingBreakdown timing;

  const MethodResult* method(const std::string& name) const;
};

// Cross-validated accuracy of the All baseline (alpha = beta) for each
// candidate l2; returns the best (ties to the smaller value).
double tune_l2_on_all(const Dataset& target_train, const Dataset& source, std::size_t k,
                      const TrainConfig& base, const std::vector<double>& grid,
                      std::uint64_t seed);

// Fits every method on the same split and scores all of them on the given
// held-out target test set.
BenchmarkReport run_benchmark(const Dataset& target_train, const Dataset& target_test,
                              const Dataset& source, const BenchmarkOptions& options);

}  // namespace crosstrainer
