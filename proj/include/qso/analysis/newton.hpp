#pragma once

#include <cstdint>

#include "qso/simplex.hpp"
#include "qso/tensor.hpp"

namespace qso {

struct NewtonOptions {
  double tol = 1e-12;
  int max_iterations = 200;
};

struct NewtonResult {
  SimplexPoint x;
  double residual = 0.0;  // sup-norm of V^n(x) - x
  int iterations = 0;
  bool converged = false;
};

/// ||V^n(x) - x||_inf.
double periodic_residual(const CoefficientTensor& t, const SimplexPoint& x, int n);

/// Newton iteration on V^n(x) - x over the affine hull of the simplex.
///
/// The last coordinate is eliminated through the unit-sum constraint, and
/// steps are minimum-norm least-squares solutions, so the iteration also
/// handles solution sets that are not isolated. Iterates leaving the simplex
/// are clamped and renormalized. When a full step does not reduce the
/// residual the step is halved; if that fails, or the reduced Jacobian has
/// rank zero, a damped fixed-point step x <- (x + V^n(x)) / 2 is used.
NewtonResult solve_periodic_point(const CoefficientTensor& t, int n, const SimplexPoint& start,
                                  const NewtonOptions& options = {});

}  // namespace qso
