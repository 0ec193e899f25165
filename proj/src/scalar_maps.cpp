#include "qso/scalar_maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qso/error.hpp"

namespace qso {

namespace {

constexpr double kRootResidual = 1e-10;
constexpr double kRootMerge = 1e-8;

void check_params(int m, double alpha) {
  if (m < 3) throw Error(ErrorCode::DimensionTooSmall, "m must be at least 3");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::WeightOutOfRange, "alpha " + std::to_string(alpha));
}

// Unchecked evaluation, clamped to [0, 1] against rounding.
double raw_eval(double b, double x) {
  const double y = (b * x - 2.0 * (b - 1.0)) * x + (b - 1.0);
  return std::clamp(y, 0.0, 1.0);
}

}  // namespace

ScalarMapSpec ScalarMapSpec::f_alpha(int m, double alpha) {
  check_params(m, alpha);
  return ScalarMapSpec{ScalarMapKind::F_ALPHA, m, alpha};
}

double ScalarMapSpec::leading() const noexcept {
  if (kind == ScalarMapKind::F) return 2.0;
  return 2.0 - (m - 2) * alpha / (m - 1);
}

double eval(const ScalarMapSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::DomainViolation, "x = " + std::to_string(x) + " not in [0, 1]");
  return raw_eval(spec.leading(), x);
}

double iterate_scalar(const ScalarMapSpec& spec, double x0, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  double x = eval(spec, x0);
  if (n == 0) return x0;
  const double b = spec.leading();
  for (std::int64_t i = 1; i < n; ++i) x = raw_eval(b, x);
  return x;
}

double scalar_fixed_point(int m, double alpha) {
  check_params(m, alpha);
  const double k = m - 1;
  return ((1.0 - alpha) * k + alpha) / ((2.0 - alpha) * k + alpha);
}

double conjugacy_h(int m, double alpha, double x) {
  check_params(m, alpha);
  const double b = ScalarMapSpec::f_alpha(m, alpha).leading();
  return 0.5 * b * (1.0 - x);
}

double logistic2(double y) { return 2.0 * y * (1.0 - y); }

std::vector<double> low_period_scan(const ScalarMapSpec& spec, int n, int grid) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be at least 1");
  if (grid < 1000) throw Error(ErrorCode::InvalidArgument, "grid must have at least 1000 cells");
  const double b = spec.leading();
  auto g = [&](double x) {
    double y = x;
    for (int i = 0; i < n; ++i) y = raw_eval(b, y);
    return y - x;
  };

  std::vector<double> roots;
  double x_prev = 0.0;
  double g_prev = g(0.0);
  if (std::abs(g_prev) < kRootResidual) roots.push_back(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    const double gx = g(x);
    if (std::abs(gx) < kRootResidual) {
      roots.push_back(x);
    } else if (std::abs(g_prev) >= kRootResidual && (g_prev < 0.0) != (gx < 0.0)) {
      double lo = x_prev, hi = x, glo = g_prev;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      const double r = 0.5 * (lo + hi);
      if (std::abs(g(r)) < kRootResidual) roots.push_back(r);
    }
    x_prev = x;
    g_prev = gx;
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (merged.empty() || r - merged.back() > kRootMerge) merged.push_back(r);
  }
  return merged;
}

}  // namespace qso
