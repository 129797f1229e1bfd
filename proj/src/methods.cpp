#include "crosstrainer/methods.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>

#include "crosstrainer/errors.hpp"
#include "crosstrainer/reweight.hpp"

namespace crosstrainer {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

MethodResult fit_baseline(BaselineKind kind, const Dataset& target, const Dataset& source,
                          const Dataset& test, const TrainConfig& cfg) {
  double beta = static_cast<double>(target.n_rows) /
                static_cast<double>(target.n_rows + source.n_rows);
  double alpha;
  const char* name;
  switch (kind) {
    case BaselineKind::kTarget: alpha = 1.0, name = "target"; break;
    case BaselineKind::kSource: alpha = 0.0, name = "source"; break;
    default: alpha = beta, name = "all"; break;
  }
  AlphaProblem problem = make_alpha_problem(target, source, alpha);
  auto t0 = std::chrono::steady_clock::now();
  TrainResult res = train_at_alpha(problem, cfg);
  double secs = seconds_since(t0);
  double acc = accuracy(res.model, test);
  return {name, std::move(res.model), acc, secs};
}

DomainWeights balanced_domain_weights(std::size_t n_target, std::size_t n_source) {
  if (n_target < 1 || n_source < 1)
    throw validation_error("domain classifier needs rows in both domains");
  double m = static_cast<double>(n_target + n_source);
  return {m / (2.0 * static_cast<double>(n_target)), m / (2.0 * static_cast<double>(n_source))};
}

LinearModel domain_classifier(const Dataset& target, const Dataset& source,
                              const TrainConfig& cfg) {
  if (target.n_rows == 0 || source.n_rows == 0)
    throw validation_error("domain classifier needs rows in both domains");
  Dataset combined = concat_rows(target, source);
  for (std::size_t i = 0; i < combined.n_rows; ++i)
    combined.labels[i] = i < target.n_rows ? 1 : 0;  // membership, not task label
  DomainWeights dw = balanced_domain_weights(target.n_rows, source.n_rows);
  std::vector<double> weights(combined.n_rows);
  std::fill(weights.begin(), weights.begin() + target.n_rows, dw.target_weight);
  std::fill(weights.begin() + target.n_rows, weights.end(), dw.source_weight);
  return train_sgd(combined, weights, cfg).model;
}

MethodResult fit_pred(const Dataset& target, const Dataset& source, const Dataset& test,
                      const TrainConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  LinearModel dom = domain_classifier(target, source, cfg);
  Dataset combined = concat_rows(target, source);
  std::vector<double> weights(combined.n_rows);
  for (std::size_t i = 0; i < combined.n_rows; ++i)
    weights[i] = dom.proba(combined.row(i));
  TrainResult res = train_sgd(combined, weights, cfg);
  double secs = seconds_since(t0);
  double acc = accuracy(res.model, test);
  return {"pred", std::move(res.model), acc, secs};
}

double import_weight(double p, double c) {
  p = std::clamp(p, 0.001, 0.999);
  return c / (1.0 / p - 1.0);
}

MethodResult fit_import(const Dataset& target, const Dataset& source, const Dataset& test,
                        const TrainConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  LinearModel dom = domain_classifier(target, source, cfg);
  Dataset combined = concat_rows(target, source);
  double c = static_cast<double>(source.n_rows) / static_cast<double>(target.n_rows);
  std::vector<double> weights(combined.n_rows, 1.0);
  for (std::size_t i = target.n_rows; i < combined.n_rows; ++i)
    weights[i] = import_weight(dom.proba(combined.row(i)), c);
  TrainResult res = train_sgd(combined, weights, cfg);
  double secs = seconds_since(t0);
  double acc = accuracy(res.model, test);
  return {"import", std::move(res.model), acc, secs};
}

Dataset feataug_transform(const Dataset& ds, Domain domain) {
  Dataset out;
  std::size_t d = ds.n_cols;
  out.n_cols = 3 * d;
  out.n_rows = ds.n_rows;
  out.labels = ds.labels;
  out.features.assign(ds.n_rows * out.n_cols, 0.0);
  std::size_t copy_block = domain == Domain::kSource ? d : 2 * d;
  for (std::size_t i = 0; i < ds.n_rows; ++i) {
    const double* x = ds.row(i);
    double* o = out.row(i);
    std::memcpy(o, x, d * sizeof(double));
    std::memcpy(o + copy_block, x, d * sizeof(double));
  }
  return out;
}

MethodResult fit_feataug(const Dataset& target, const Dataset& source, const Dataset& test,
                         const TrainConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Dataset combined =
      concat_rows(feataug_transform(target, Domain::kTarget), feataug_transform(source, Domain::kSource));
  std::vector<double> weights(combined.n_rows, 1.0);
  TrainResult res = train_sgd(combined, weights, cfg);
  double secs = seconds_since(t0);
  Dataset aug_test = feataug_transform(test, Domain::kTarget);
  double acc = accuracy(res.model, aug_test);
  return {"feataug", std::move(res.model), acc, secs};
}

}  // namespace crosstrainer
