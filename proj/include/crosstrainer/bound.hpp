#pragma once

namespace crosstrainer {

// Parameters of the target-error upper bound
//   g(alpha) = 2B sqrt(alpha^2/beta + (1-alpha)^2/(1-beta)) + 2(1-alpha)A.
// A measures source/target divergence, B classifier-class complexity; both
// are user-supplied (the library never estimates them from data).
struct BoundParams {
  double beta;  // in (0, 1)
  double A;     // >= 0
  double B;     // >= 0
};

double g_alpha(double alpha, const BoundParams& p);

// Minimizer of g over [0, 1] within +-tol, via golden-section search on -g.
double minimize_g(const BoundParams& p, double tol);

// True iff every second central difference of g over an alpha grid of the
// given step is >= -1e-9.
bool convexity_check(const BoundParams& p, double grid_step);

}  // namespace crosstrainer
