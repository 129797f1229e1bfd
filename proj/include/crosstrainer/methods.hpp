#pragma once

#include <string>

#include "crosstrainer/dataset.hpp"
#include "crosstrainer/linmodel.hpp"

namespace crosstrainer {

struct MethodResult {
  std::string method_name;
  LinearModel model;  // dimension 3d for feataug
  double test_accuracy = 0.0;
  double fit_seconds = 0.0;
};

enum class BaselineKind { kTarget, kSource, kAll };

// Target (alpha = 1), Source (alpha = 0), All (alpha = beta); each delegates
// to train_at_alpha.
MethodResult fit_baseline(BaselineKind kind, const Dataset& target, const Dataset& source,
                          const Dataset& test, const TrainConfig& cfg);

// Class-balanced weights for the domain-membership classifier: each class
// receives the same total weight.
struct DomainWeights {
  double target_weight;
  double source_weight;
};
DomainWeights balanced_domain_weights(std::size_t n_target, std::size_t n_source);

// Logistic model distinguishing target rows (label 1) from source rows
// (label 0), trained class-balanced on features only.
LinearModel domain_classifier(const Dataset& target, const Dataset& source,
                              const TrainConfig& cfg);

// Weights every combined instance by the predicted probability of belonging
// to the target, then trains on the combined task labels.
MethodResult fit_pred(const Dataset& target, const Dataset& source, const Dataset& test,
                      const TrainConfig& cfg);

// Importance weight c/(1/p - 1) with p clamped to [0.001, 0.999].
double import_weight(double p, double c);

// Source rows weighted by import_weight with c = n_S/n_T; target rows by 1.
MethodResult fit_import(const Dataset& target, const Dataset& source, const Dataset& test,
                        const TrainConfig& cfg);

enum class Domain { kSource, kTarget };

// Width-3d block layout: source rows <x, x, 0>, target rows <x, 0, x>.
Dataset feataug_transform(const Dataset& ds, Domain domain);

// Trains unweighted on the augmented union; test rows augment as target.
MethodResult fit_feataug(const Dataset& target, const Dataset& source, const Dataset& test,
                         const TrainConfig& cfg);

}  // namespace crosstrainer
