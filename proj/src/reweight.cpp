#include "crosstrainer/reweight.hpp"

#include "crosstrainer/errors.hpp"

namespace crosstrainer {

AlphaProblem make_alpha_problem(const Dataset& target, const Dataset& source, double alpha) {
  if (target.n_rows == 0 || source.n_rows == 0)
    throw validation_error("alpha problem needs non-empty target and source");
  if (target.n_cols != source.n_cols)
    throw validation_error("target and source dimensions differ");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("alpha must lie in [0, 1]");
  double beta = static_cast<double>(target.n_rows) /
                static_cast<double>(target.n_rows + source.n_rows);
  return {target, source, alpha, beta};
}

AlphaWeights alpha_weights(double alpha, std::size_t n_target, std::size_t n_source) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("alpha must lie in [0, 1]");
  if (n_target < 1 || n_source < 1)
    throw validation_error("alpha weights need at least one row per domain");
  double beta = static_cast<double>(n_target) / static_cast<double>(n_target + n_source);
  return {alpha / beta, (1.0 - alpha) / (1.0 - beta)};
}

std::vector<double> combined_alpha_weights(double alpha, std::size_t n_target,
                                           std::size_t n_source) {
  AlphaWeights w = alpha_weights(alpha, n_target, n_source);
  std::vector<double> out(n_target + n_source);
  std::fill(out.begin(), out.begin() + n_target, w.target_weight);
  std::fill(out.begin() + n_target, out.end(), w.source_weight);
  return out;
}

TrainResult train_at_alpha(const AlphaProblem& problem, const TrainConfig& cfg,
                           const LinearModel* init) {
  Dataset combined = concat_rows(problem.target, problem.source);
  std::vector<double> weights =
      combined_alpha_weights(problem.alpha, problem.target.n_rows, problem.source.n_rows);
  return train_sgd(combined, weights, cfg, init);
}

double empirical_alpha_error(const LinearModel& model, const AlphaProblem& problem) {
  double target_err = 1.0 - accuracy(model, problem.target);
  double source_err = 1.0 - accuracy(model, problem.source);
  return problem.alpha * target_err + (1.0 - problem.alpha) * source_err;
}

}  // namespace crosstrainer
