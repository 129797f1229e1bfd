#pragma once

#include <vector>

#include "crosstrainer/dataset.hpp"
#include "crosstrainer/linmodel.hpp"

namespace crosstrainer {

// The alpha-weighted training problem over a target/source pair.
struct AlphaProblem {
  const Dataset& target;
  const Dataset& source;
  double alpha;  // in [0, 1]
  double beta;   // n_target / (n_target + n_source)
};

AlphaProblem make_alpha_problem(const Dataset& target, const Dataset& source, double alpha);

struct AlphaWeights {
  double target_weight;
  double source_weight;
};

// Per-instance weights realizing the convex combination of per-dataset mean
// errors: target rows get alpha*m/n_T, source rows (1-alpha)*m/n_S. Computed
// as alpha/beta and (1-alpha)/(1-beta) so alpha == beta yields exactly (1, 1).
AlphaWeights alpha_weights(double alpha, std::size_t n_target, std::size_t n_source);

// Weight vector for target rows followed by source rows.
std::vector<double> combined_alpha_weights(double alpha, std::size_t n_target,
                                           std::size_t n_source);

// Concatenates target and source, applies alpha_weights, trains.
TrainResult train_at_alpha(const AlphaProblem& problem, const TrainConfig& cfg,
                           const LinearModel* init = nullptr);

// alpha * (0/1 error on target) + (1 - alpha) * (0/1 error on source).
double empirical_alpha_error(const LinearModel& model, const AlphaProblem& problem);

}  // namespace crosstrainer
