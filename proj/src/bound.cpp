#include "crosstrainer/bound.hpp"

#include <cmath>

#include "crosstrainer/errors.hpp"
#include "crosstrainer/unimodal.hpp"

namespace crosstrainer {

namespace {

void check_params(const BoundParams& p) {
  if (!(p.beta > 0.0 && p.beta < 1.0)) throw validation_error("beta must lie in (0, 1)");
  if (p.A < 0.0 || p.B < 0.0) throw validation_error("A and B must be non-negative");
}

}  // namespace

double g_alpha(double alpha, const BoundParams& p) {
  check_params(p);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("alpha must lie in [0, 1]");
  double radical = std::sqrt(alpha * alpha / p.beta +
                             (1.0 - alpha) * (1.0 - alpha) / (1.0 - p.beta));
  return 2.0 * p.B * radical + 2.0 * (1.0 - alpha) * p.A;
}

double minimize_g(const BoundParams& p, double tol) {
  check_params(p);
  if (!(tol > 0.0)) throw validation_error("tol must be positive");
  return unimodal::find_max([&](double a) { return -g_alpha(a, p); }, tol);
}

bool convexity_check(const BoundParams& p, double grid_step) {
  check_params(p);
  if (!(grid_step > 0.0 && grid_step <= 0.1))
    throw validation_error("grid_step must lie in (0, 0.1]");
  double h = grid_step;
  for (std::size_t i = 1; static_cast<double>(i + 1) * h <= 1.0 + 1e-15; ++i) {
    double a = static_cast<double>(i) * h;
    double hi = std::min(static_cast<double>(i + 1) * h, 1.0);  // guard fp overshoot
    double second = g_alpha(a - h, p) - 2.0 * g_alpha(a, p) + g_alpha(hi, p);
    if (second < -1e-9) return false;
  }
  return true;
}

}  // namespace crosstrainer
