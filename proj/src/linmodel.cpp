#include "crosstrainer/linmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "crosstrainer/errors.hpp"
#include "crosstrainer/rng.hpp"

namespace crosstrainer {

namespace {

constexpr double kProbEps = 1e-12;

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double clamped_logloss(double p_raw, int y) {
  double p = std::clamp(p_raw, kProbEps, 1.0 - kProbEps);
  return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

// d(logloss)/dz. Zero in the clamped regions so the analytic gradient matches
// the loss actually evaluated.
double logloss_dz(double p_raw, int y) {
  if (p_raw < kProbEps || p_raw > 1.0 - kProbEps) return 0.0;
  return p_raw - static_cast<double>(y);
}

void check_weights(const Dataset& ds, std::span<const double> weights) {
  if (weights.size() != ds.n_rows)
    throw validation_error("weight vector length does not match row count");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw validation_error("weights must be non-negative");
    total += w;
  }
  if (total <= 0.0) throw validation_error("weights must not all be zero");
}

}  // namespace

double LinearModel::decision(const double* x) const {
  double z = intercept;
  std::size_t d = coefficients.size();
  for (std::size_t j = 0; j < d; ++j) z += coefficients[j] * x[j];
  return z;
}

double LinearModel::proba(const double* x) const { return sigmoid(decision(x)); }

double weighted_loss(const LinearModel& model, const Dataset& ds,
                     std::span<const double> weights, double l2_penalty) {
  if (model.dim() != ds.n_cols) throw validation_error("model dimension does not match data");
  check_weights(ds, weights);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ds.n_rows; ++i) {
    if (weights[i] == 0.0) continue;
    num += weights[i] * clamped_logloss(sigmoid(model.decision(ds.row(i))), ds.labels[i]);
    den += weights[i];
  }
  double ridge = 0.0;
  for (double c : model.coefficients) ridge += c * c;
  return num / den + l2_penalty * ridge;
}

LossGradient weighted_loss_gradient(const LinearModel& model, const Dataset& ds,
                                    std::span<const double> weights, double l2_penalty) {
  if (model.dim() != ds.n_cols) throw validation_error("model dimension does not match data");
  check_weights(ds, weights);
  LossGradient g;
  g.coefficients.assign(ds.n_cols, 0.0);
  double den = 0.0;
  for (std::size_t i = 0; i < ds.n_rows; ++i) {
    if (weights[i] == 0.0) continue;
    double dz = weights[i] * logloss_dz(sigmoid(model.decision(ds.row(i))), ds.labels[i]);
    const double* x = ds.row(i);
    for (std::size_t j = 0; j < ds.n_cols; ++j) g.coefficients[j] += dz * x[j];
    g.intercept += dz;
    den += weights[i];
  }
  for (std::size_t j = 0; j < ds.n_cols; ++j)
    g.coefficients[j] = g.coefficients[j] / den + 2.0 * l2_penalty * model.coefficients[j];
  g.intercept /= den;
  return g;
}

namespace {

// Loss over the effective rows with mean-one weights u (sums divided by the
// effective count, matching weighted_loss exactly up to the u scaling).
double effective_loss(const LinearModel& m, const Dataset& ds,
                      const std::vector<std::size_t>& rows, const std::vector<double>& u,
                      double l2) {
  double num = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k)
    num += u[k] * clamped_logloss(sigmoid(m.decision(ds.row(rows[k]))), ds.labels[rows[k]]);
  double ridge = 0.0;
  for (double c : m.coefficients) ridge += c * c;
  return num / static_cast<double>(rows.size()) + l2 * ridge;
}

}  // namespace

TrainResult train_sgd(const Dataset& ds, std::span<const double> weights,
                      const TrainConfig& cfg, const LinearModel* init) {
  if (ds.n_rows == 0) throw validation_error("cannot train on an empty dataset");
  if (cfg.max_epochs < 1 || cfg.batch_size < 1)
    throw validation_error("max_epochs and batch_size must be at least 1");
  if (cfg.l2_penalty < 0.0 || cfg.tolerance < 0.0)
    throw validation_error("l2_penalty and tolerance must be non-negative");
  check_weights(ds, weights);
  if (init && init->dim() != ds.n_cols)
    throw validation_error("warm-start model dimension does not match data");

  std::size_t d = ds.n_cols;
  std::vector<std::size_t> rows;  // effective rows: weight > 0, original order
  for (std::size_t i = 0; i < ds.n_rows; ++i)
    if (weights[i] > 0.0) rows.push_back(i);
  std::size_t n = rows.size();

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) total += weights[rows[k]];
  double rescale = static_cast<double>(n) / total;
  std::vector<double> u(n);  // per-row weights with mean exactly scale-free
  for (std::size_t k = 0; k < n; ++k) u[k] = weights[rows[k]] * rescale;

  LinearModel model;
  if (init) {
    model = *init;
  } else {
    model.coefficients.assign(d, 0.0);
    model.intercept = 0.0;
  }

  Rng rng(cfg.seed, 6);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});  // indexes into rows/u

  double best_loss = effective_loss(model, ds, rows, u, cfg.l2_penalty);
  LinearModel best_model = model;
  std::size_t stagnant = 0;
  TrainStats stats;

  std::vector<double> grad(d);
  std::vector<double> avg_coef(d);
  LinearModel avg;
  avg.coefficients.resize(d);
  std::size_t t = 0;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    rng.shuffle(order);
    std::fill(avg_coef.begin(), avg_coef.end(), 0.0);
    double avg_intercept = 0.0;
    std::size_t steps = 0;

    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      std::size_t stop = std::min(start + cfg.batch_size, n);
      std::fill(grad.begin(), grad.end(), 0.0);
      double grad_b = 0.0;
      for (std::size_t k = start; k < stop; ++k) {
        std::size_t i = rows[order[k]];
        double dz = u[order[k]] * logloss_dz(sigmoid(model.decision(ds.row(i))), ds.labels[i]);
        if (dz == 0.0) continue;
        const double* x = ds.row(i);
        for (std::size_t j = 0; j < d; ++j) grad[j] += dz * x[j];
        grad_b += dz;
      }
      double inv_batch = 1.0 / static_cast<double>(stop - start);
      double eta = cfg.schedule == LearningRateSchedule::kConstant
                       ? cfg.eta0
                       : cfg.eta0 / (1.0 + cfg.decay * static_cast<double>(t));
      ++t;
      double shrink = 2.0 * cfg.l2_penalty;
      for (std::size_t j = 0; j < d; ++j) {
        model.coefficients[j] -= eta * (grad[j] * inv_batch + shrink * model.coefficients[j]);
        avg_coef[j] += model.coefficients[j];
      }
      model.intercept -= eta * grad_b * inv_batch;
      avg_intercept += model.intercept;
      ++steps;
    }

    double inv_steps = 1.0 / static_cast<double>(steps);
    for (std::size_t j = 0; j < d; ++j) avg.coefficients[j] = avg_coef[j] * inv_steps;
    avg.intercept = avg_intercept * inv_steps;

    double loss = effective_loss(avg, ds, rows, u, cfg.l2_penalty);
    stats.epochs_run = epoch;
    if (loss < best_loss - cfg.tolerance * best_loss) {
      best_loss = loss;
      best_model = avg;
      stagnant = 0;
    } else {
      if (++stagnant >= cfg.patience) {
        stats.converged = true;
        break;
      }
    }
  }

  stats.final_loss = best_loss;
  return {std::move(best_model), stats};
}

std::vector<int> predict(const LinearModel& model, const Dataset& ds) {
  if (model.dim() != ds.n_cols) throw validation_error("model dimension does not match data");
  std::vector<int> out(ds.n_rows);
  for (std::size_t i = 0; i < ds.n_rows; ++i) out[i] = model.predict_row(ds.row(i));
  return out;
}

double accuracy(const LinearModel& model, const Dataset& ds) {
  if (ds.n_rows == 0) throw validation_error("cannot score an empty dataset");
  if (model.dim() != ds.n_cols) throw validation_error("model dimension does not match data");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.n_rows; ++i)
    if (model.predict_row(ds.row(i)) == ds.labels[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(ds.n_rows);
}

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void save_model(const LinearModel& model, const TrainConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << "format crosstrainer-model-v1\n";
  out << "d " << model.dim() << "\n";
  out << "intercept " << fmt17(model.intercept) << "\n";
  out << "coefficients";
  for (double c : model.coefficients) out << ' ' << fmt17(c);
  out << "\n";
  out << "l2_penalty " << fmt17(cfg.l2_penalty) << "\n";
  out << "schedule " << (cfg.schedule == LearningRateSchedule::kConstant ? "constant" : "inv-scaling") << "\n";
  out << "eta0 " << fmt17(cfg.eta0) << "\n";
  out << "decay " << fmt17(cfg.decay) << "\n";
  out << "max_epochs " << cfg.max_epochs << "\n";
  out << "tolerance " << fmt17(cfg.tolerance) << "\n";
  out << "patience " << cfg.patience << "\n";
  out << "batch_size " << cfg.batch_size << "\n";
  out << "seed " << cfg.seed << "\n";
  if (!out) throw io_error("failed writing '" + path + "'");
}

LinearModel load_model(const std::string& path, TrainConfig* cfg_out) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  LinearModel model;
  TrainConfig cfg;
  std::size_t d = 0;
  bool have_format = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string where = path + ":" + std::to_string(line_no);
    if (key == "format") {
      std::string v;
      ls >> v;
      if (v != "crosstrainer-model-v1") throw format_error(where + ": unknown format '" + v + "'");
      have_format = true;
    } else if (key == "d") {
      ls >> d;
    } else if (key == "intercept") {
      ls >> model.intercept;
    } else if (key == "coefficients") {
      double v;
      while (ls >> v) model.coefficients.push_back(v);
      if (ls.eof()) ls.clear();  // exhausting the line is the success case
    } else if (key == "l2_penalty") {
      ls >> cfg.l2_penalty;
    } else if (key == "schedule") {
      std::string v;
      ls >> v;
      if (v == "constant")
        cfg.schedule = LearningRateSchedule::kConstant;
      else if (v == "inv-scaling")
        cfg.schedule = LearningRateSchedule::kInvScaling;
      else
        throw format_error(where + ": unknown schedule '" + v + "'");
    } else if (key == "eta0") {
      ls >> cfg.eta0;
    } else if (key == "decay") {
      ls >> cfg.decay;
    } else if (key == "max_epochs") {
      ls >> cfg.max_epochs;
    } else if (key == "tolerance") {
      ls >> cfg.tolerance;
    } else if (key == "patience") {
      ls >> cfg.patience;
    } else if (key == "batch_size") {
      ls >> cfg.batch_size;
    } else if (key == "seed") {
      ls >> cfg.seed;
    } else {
      throw format_error(where + ": unknown key '" + key + "'");
    }
    if (ls.fail()) throw format_error(where + ": malformed value");
  }
  if (!have_format) throw format_error(path + ": missing format line");
  if (model.coefficients.size() != d)
    throw format_error(path + ": coefficient count does not match d");
  if (cfg_out) *cfg_out = cfg;
  return model;
}

}  // namespace crosstrainer
