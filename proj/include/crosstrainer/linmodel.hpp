#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crosstrainer/dataset.hpp"

namespace crosstrainer {

// Logistic classifier: predicts 1 iff coefficients . x + intercept > 0.
struct LinearModel {
  std::vector<double> coefficients;
  double intercept = 0.0;

  std::size_t dim() const { return coefficients.size(); }
  double decision(const double* x) const;
  double proba(const double* x) const;  // sigmoid of the decision value
  int predict_row(const double* x) const { return decision(x) > 0.0 ? 1 : 0; }
};

enum class LearningRateSchedule { kConstant, kInvScaling };

struct TrainConfig {
  double l2_penalty = 1e-4;
  LearningRateSchedule schedule = LearningRateSchedule::kInvScaling;
  double eta0 = 0.1;
  double decay = 1e-3;       // inv-scaling slope: eta0 / (1 + decay * t)
  std::size_t max_epochs = 200;
  double tolerance = 1e-4;   // relative loss improvement counted as progress
  std::size_t patience = 2;  // stagnant epochs tolerated before stopping
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

struct TrainStats {
  std::size_t epochs_run = 0;
  double final_loss = 0.0;
  bool converged = false;  // stopped by tolerance rather than max_epochs
};

struct TrainResult {
  LinearModel model;
  TrainStats stats;
};

// Weight-normalized log-loss plus ridge term:
//   sum_i w_i * logloss_i / sum_i w_i + l2 * |coefficients|^2.
// Probabilities are clamped to [1e-12, 1-1e-12] before the log.
double weighted_loss(const LinearModel& model, const Dataset& ds,
                     std::span<const double> weights, double l2_penalty);

struct LossGradient {
  std::vector<double> coefficients;
  double intercept = 0.0;
};

// Analytic gradient of weighted_loss (consistent with the clamping: saturated
// rows contribute zero).
LossGradient weighted_loss_gradient(const LinearModel& model, const Dataset& ds,
                                    std::span<const double> weights, double l2_penalty);

// Minibatch SGD on weighted_loss. Zero-weight rows are excluded from the
// pass entirely; remaining weights are rescaled to mean one so the step size
// is invariant to the overall weight scale. Each epoch's iterates are
// averaged and the best-loss average is returned (averaged SGD), which keeps
// the endpoint stable enough for warm starts to be accuracy-neutral.
// When init is given, coefficients start there and the schedule restarts.
TrainResult train_sgd(const Dataset& ds, std::span<const double> weights,
                      const TrainConfig& cfg, const LinearModel* init = nullptr);

std::vector<int> predict(const LinearModel& model, const Dataset& ds);

// Fraction of rows whose prediction matches the label.
double accuracy(const LinearModel& model, const Dataset& ds);

// Textual key-value model file; values round-trip at 17 significant digits.
void save_model(const LinearModel& model, const TrainConfig& cfg, const std::string& path);
LinearModel load_model(const std::string& path, TrainConfig* cfg_out = nullptr);

}  // namespace crosstrainer
