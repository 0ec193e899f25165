#include "qso/analysis/newton.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/QR>

#include "qso/error.hpp"

namespace qso {

namespace {

std::vector<double> power_image(const CoefficientTensor& t, std::span<const double> x, int n) {
  std::vector<double> cur(x.begin(), x.end()), next(cur.size());
  for (int s = 0; s < n; ++s) {
    t.evaluate(cur, next);
    double sum = 0.0;
    for (double v : next) sum += v;
    for (std::size_t k = 0; k < cur.size(); ++k) cur[k] = next[k] / sum;
  }
  return cur;
}

double residual_of(const CoefficientTensor& t, std::span<const double> x, int n) {
  return sup_distance(power_image(t, x, n), x);
}

// Chain-rule Jacobian of the raw n-fold map along the orbit of x.
Eigen::MatrixXd power_jacobian(const CoefficientTensor& t, std::span<const double> x, int n) {
  const int m = t.dim();
  Eigen::MatrixXd total = Eigen::MatrixXd::Identity(m, m);
  std::vector<double> cur(x.begin(), x.end()), next(cur.size());
  for (int s = 0; s < n; ++s) {
    total = jacobian(t, cur) * total;
    t.evaluate(cur, next);
    double sum = 0.0;
    for (double v : next) sum += v;
    for (std::size_t k = 0; k < cur.size(); ++k) cur[k] = next[k] / sum;
  }
  return total;
}

std::vector<double> project(std::vector<double> x) {
  double sum = 0.0;
  for (double& v : x) {
    if (!(v > 0.0)) v = 0.0;
    sum += v;
  }
  if (!(sum > 0.0)) return std::vector<double>(x.size(), 1.0 / static_cast<double>(x.size()));
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

double periodic_residual(const CoefficientTensor& t, const SimplexPoint& x, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be at least 1");
  return residual_of(t, x.coords(), n);
}

NewtonResult solve_periodic_point(const CoefficientTensor& t, int n, const SimplexPoint& start,
                                  const NewtonOptions& options) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be at least 1");
  if (start.dim() != t.dim()) throw Error(ErrorCode::DimensionMismatch, "start point dimension");
  const int m = t.dim();
  const int r = m - 1;

  std::vector<double> x(start.coords().begin(), start.coords().end());
  double res = residual_of(t, x, n);
  int it = 0;
  for (; it < options.max_iterations && res > options.tol; ++it) {
    const auto image = power_image(t, x, n);
    const Eigen::MatrixXd d = power_jacobian(t, x, n);

    // Reduced system in y = (x_1..x_{m-1}), x_m = 1 - sum(y).
    Eigen::MatrixXd a(r, r);
    Eigen::VectorXd rhs(r);
    for (int k = 0; k < r; ++k) {
      for (int j = 0; j < r; ++j) a(k, j) = d(k, j) - d(k, r) - (k == j ? 1.0 : 0.0);
      rhs(k) = -(image[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(k)]);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    cod.setThreshold(1e-12);

    bool accepted = false;
    if (cod.rank() > 0) {
      const Eigen::VectorXd delta = cod.solve(rhs);
      if (delta.allFinite()) {
        for (double step = 1.0; step >= 1.0 / 64.0; step *= 0.5) {
          std::vector<double> trial(x);
          double tail = 0.0;
          for (int k = 0; k < r; ++k) {
            trial[static_cast<std::size_t>(k)] += step * delta(k);
            tail += trial[static_cast<std::size_t>(k)];
          }
          trial[static_cast<std::size_t>(r)] = 1.0 - tail;
          trial = project(std::move(trial));
          const double trial_res = residual_of(t, trial, n);
          if (trial_res < res) {
            x = std::move(trial);
            res = trial_res;
            accepted = true;
            break;
          }
        }
      }
    }
    if (!accepted) {
      std::vector<double> damped(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) damped[k] = 0.5 * (x[k] + image[k]);
      damped = project(std::move(damped));
      const double damped_res = residual_of(t, damped, n);
      if (!(damped_res < res)) break;
      x = std::move(damped);
      res = damped_res;
    }
  }
  return NewtonResult{SimplexPoint::normalized(x), res, it, res <= options.tol};
}

}  // namespace qso
