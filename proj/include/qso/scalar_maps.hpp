#pragma once

#include <cstdint>
#include <vector>

namespace qso {

/// The one-dimensional maps that drive the last coordinate.
///
///   F:        f(x)   = 2x^2 - 2x + 1
///   F_ALPHA:  f_a(x) = b x^2 - 2(b - 1) x + (b - 1),  b = 2 - (m-2) alpha / (m-1)
///
/// f_a reduces to f at alpha = 0.
enum class ScalarMapKind { F, F_ALPHA };

struct ScalarMapSpec {
  ScalarMapKind kind = ScalarMapKind::F;
  int m = 0;
  double alpha = 0.0;

  static ScalarMapSpec f() { return {}; }
  /// Throws DimensionTooSmall for m < 3 and WeightOutOfRange for alpha outside [0, 1].
  static ScalarMapSpec f_alpha(int m, double alpha);

  /// Leading coefficient b.
  double leading() const noexcept;
};

/// Throws DomainViolation unless 0 <= x <= 1.
double eval(const ScalarMapSpec& spec, double x);
double iterate_scalar(const ScalarMapSpec& spec, double x0, std::int64_t n);

/// Interior fixed point x_m* = ((1-alpha)(m-1) + alpha) / ((2-alpha)(m-1) + alpha).
double scalar_fixed_point(int m, double alpha);

/// Affine conjugacy of f_alpha onto the logistic map g(y) = 2y(1-y):
/// h(f_alpha(x)) = g(h(x)), with h(x) = (b/2)(1 - x).
double conjugacy_h(int m, double alpha, double x);
double logistic2(double y);

/// All roots of f^n(x) - x on [0, 1], located on a uniform grid of `grid`
/// cells and refined by bisection on sign changes; each returned root has
/// |f^n(x) - x| < 1e-10 and roots closer than 1e-8 are merged.
std::vector<double> low_period_scan(const ScalarMapSpec& spec, int n, int grid);

}  // namespace qso
