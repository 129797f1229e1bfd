#pragma once

#include <cmath>

#include "crosstrainer/errors.hpp"

// Bracketing and golden-section maximization of a unimodal objective on [l, r].
// The objective is any callable double(double); callers that care about
// evaluation counts should memoize inside the callable.

namespace crosstrainer::unimodal {

inline constexpr double kInvPhi = 0.6180339887498949;  // reciprocal golden ratio
inline constexpr double kTieEps = 1e-9;                // accuracy plateau tolerance

struct Bracket {
  double left;
  double mid;
  double right;
};

// Recursive binary narrowing: stop when the interval is below delta or the
// midpoint attains the maximum of the three probes (ties count for the mid).
template <typename F>
Bracket find_bracket(F&& f, double l, double r, double delta) {
  if (!(l < r)) throw validation_error("bracket requires l < r");
  while (true) {
    double m = 0.5 * (l + r);
    double al = f(l), am = f(m), ar = f(r);
    if (r - l < delta) return {l, m, r};
    if (am >= al - kTieEps && am >= ar - kTieEps) return {l, m, r};
    if (al <= ar)
      l = m;
    else
      r = m;
  }
}

// Golden-section search for the maximum inside a valid bracket. Returns the
// best value probed once the interval is narrower than delta. Interior probes
// sit at the golden ratios of the current interval, so each narrowing shrinks
// it by kInvPhi.
template <typename F>
double golden_max(F&& f, const Bracket& br, double delta) {
  double a = br.left, b = br.right;
  double fm = f(br.mid);
  if (!(br.left < br.mid && br.mid < br.right))
    throw validation_error("golden section requires l < m < r");
  if (fm < f(br.left) - kTieEps || fm < f(br.right) - kTieEps)
    throw validation_error("golden section requires accuracy(m) >= accuracy(l), accuracy(r)");

  double best_x = br.mid;
  double best_f = fm;
  auto consider = [&](double x, double v) {
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  };
  consider(br.left, f(br.left));
  consider(br.right, f(br.right));

  if (b - a <= delta) return best_x;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);

  while (b - a > delta) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      if (b - a <= delta) break;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      if (b - a <= delta) break;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return best_x;
}

// Full flow: bracket from [0, 1], return an endpoint when it strictly beats
// the midpoint, otherwise refine with golden-section search.
template <typename F>
double find_max(F&& f, double delta) {
  Bracket br = find_bracket(f, 0.0, 1.0, delta);
  double al = f(br.left), am = f(br.mid), ar = f(br.right);
  if (ar > am + kTieEps) return br.right;
  if (al > am + kTieEps) return br.left;
  return golden_max(f, br, delta);
}

}  // namespace crosstrainer::unimodal
