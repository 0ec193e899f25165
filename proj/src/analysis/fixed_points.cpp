#include "qso/analysis/fixed_points.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qso/analysis/newton.hpp"
#include "qso/error.hpp"
#include "qso/random.hpp"

namespace qso {

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::ATTRACTING: return "ATTRACTING";
    case Stability::REPELLING: return "REPELLING";
    case Stability::SADDLE: return "SADDLE";
    case Stability::NON_HYPERBOLIC: return "NON_HYPERBOLIC";
  }
  return "UNKNOWN";
}

Eigen::MatrixXd tangent_basis(int m) {
  // Columns e_i - e_m span the zero-sum subspace; QR makes them orthonormal.
  Eigen::MatrixXd spanning = Eigen::MatrixXd::Zero(m, m - 1);
  for (int i = 0; i < m - 1; ++i) {
    spanning(i, i) = 1.0;
    spanning(m - 1, i) = -1.0;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(spanning);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m, m - 1);
}

std::vector<std::complex<double>> tangent_spectrum(const Eigen::MatrixXd& jac) {
  const int m = static_cast<int>(jac.rows());
  const Eigen::MatrixXd basis = tangent_basis(m);
  const Eigen::MatrixXd restricted = basis.transpose() * jac * basis;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(restricted, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < restricted.rows(); ++i) out.push_back(solver.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return out;
}

Stability classify_spectrum(const std::vector<std::complex<double>>& eigenvalues, double band) {
  bool all_inside = true;
  bool all_outside = true;
  for (const auto& ev : eigenvalues) {
    const double mod = std::abs(ev);
    if (std::abs(mod - 1.0) <= band) return Stability::NON_HYPERBOLIC;
    all_inside = all_inside && mod < 1.0 - band;
    all_outside = all_outside && mod > 1.0 + band;
  }
  if (all_inside) return Stability::ATTRACTING;
  if (all_outside) return Stability::REPELLING;
  return Stability::SADDLE;
}

FixedPointReport classify_fixed_point(const CoefficientTensor& t, const SimplexPoint& x, double band) {
  const double residual = periodic_residual(t, x, 1);
  if (!(residual < kFixedPointAcceptance)) {
    throw Error(ErrorCode::NotAFixedPoint, "residual " + std::to_string(residual));
  }
  const Eigen::MatrixXd jac = jacobian(t, x);
  FixedPointReport report{x, residual, tangent_spectrum(jac), 0.0, Stability::NON_HYPERBOLIC, on_boundary(x)};
  report.transversal_eigenvalue = jac.colwise().sum().mean();
  report.classification = classify_spectrum(report.tangent_eigenvalues, band);
  return report;
}

bool canonical_less(const SimplexPoint& a, const SimplexPoint& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end());
}

std::vector<SimplexPoint> structured_starts(int m) {
  std::vector<SimplexPoint> starts;
  for (int i = 1; i <= m; ++i) starts.push_back(SimplexPoint::vertex(m, i));
  starts.push_back(SimplexPoint::center(m));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      std::vector<double> c(static_cast<std::size_t>(m), 0.0);
      c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(j)] = 0.5;
      starts.push_back(SimplexPoint::normalized(std::move(c)));
    }
  }
  return starts;
}

FixedPointSearch find_fixed_points(const CoefficientTensor& t, const FixedPointSearchOptions& options) {
  if (options.random_starts < 0) throw Error(ErrorCode::InvalidArgument, "random_starts must be nonnegative");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const int m = t.dim();
  auto starts = structured_starts(m);
  Rng rng(options.seed);
  for (int i = 0; i < options.random_starts; ++i) starts.push_back(rng.interior_point(m));

  FixedPointSearch search;
  std::vector<NewtonResult> found;
  for (const auto& start : starts) {
    ++search.starts_tried;
    const auto result = solve_periodic_point(t, 1, start, {options.tol, options.max_iterations});
    if (!result.converged) {
      ++search.not_converged;
      continue;
    }
    auto dup = std::find_if(found.begin(), found.end(), [&](const NewtonResult& f) {
      return sup_distance(f.x, result.x) <= options.dedup_radius;
    });
    if (dup == found.end()) {
      found.push_back(result);
    } else if (result.residual < dup->residual) {
      *dup = result;
    }
  }
  for (const auto& f : found) search.points.push_back(classify_fixed_point(t, f.x, options.band));
  std::sort(search.points.begin(), search.points.end(),
            [](const FixedPointReport& a, const FixedPointReport& b) { return canonical_less(a.point, b.point); });
  return search;
}

}  // namespace qso
