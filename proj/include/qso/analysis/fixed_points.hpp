#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qso/simplex.hpp"
#include "qso/tensor.hpp"

namespace qso {

enum class Stability { ATTRACTING, REPELLING, SADDLE, NON_HYPERBOLIC };
std::string_view to_string(Stability s);

inline constexpr double kHyperbolicBand = 1e-6;
inline constexpr double kFixedPointAcceptance = 1e-8;

struct FixedPointReport {
  SimplexPoint point;
  double residual = 0.0;
  /// The m-1 eigenvalues of the Jacobian restricted to the zero-sum
  /// subspace, ordered by decreasing modulus.
  std::vector<std::complex<double>> tangent_eigenvalues;
  /// Eigenvalue along the transversal direction (the column sum, 2 on S).
  double transversal_eigenvalue = 0.0;
  Stability classification = Stability::NON_HYPERBOLIC;
  bool boundary = false;
};

/// Orthonormal basis (m x (m-1)) of {v : sum(v) = 0}.
Eigen::MatrixXd tangent_basis(int m);

/// Spectrum of J on the zero-sum subspace, sorted by decreasing modulus.
/// Requires the columns of J to share a common sum so the subspace is invariant.
std::vector<std::complex<double>> tangent_spectrum(const Eigen::MatrixXd& jac);

Stability classify_spectrum(const std::vector<std::complex<double>>& eigenvalues, double band = kHyperbolicBand);

/// Throws NotAFixedPoint when ||V(x) - x||_inf >= 1e-8.
FixedPointReport classify_fixed_point(const CoefficientTensor& t, const SimplexPoint& x,
                                      double band = kHyperbolicBand);

struct FixedPointSearchOptions {
  int random_starts = 16;
  double tol = 1e-12;
  double dedup_radius = 1e-8;
  double band = kHyperbolicBand;
  int max_iterations = 200;
  std::uint64_t seed = 0;
};

struct FixedPointSearch {
  std::vector<FixedPointReport> points;  // canonical (lexicographic) order
  int starts_tried = 0;
  int not_converged = 0;
};

/// Deterministic starting set: vertices, the center, and edge midpoints.
std::vector<SimplexPoint> structured_starts(int m);

/// Multistart Newton over structured starts plus `random_starts` seeded
/// interior points; converged solutions are deduplicated and classified.
FixedPointSearch find_fixed_points(const CoefficientTensor& t, const FixedPointSearchOptions& options = {});

/// Lexicographic ordering used for every merged result list.
bool canonical_less(const SimplexPoint& a, const SimplexPoint& b);

}  // namespace qso
