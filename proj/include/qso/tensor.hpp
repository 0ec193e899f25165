#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qso/simplex.hpp"

namespace qso {

inline constexpr double kRowSumTolerance = 1e-12;
/// Off-pattern coefficients at or below this are treated as zero by is_volterra.
inline constexpr double kVolterraTolerance = 1e-12;

/// Heredity coefficients p(i,j,k) of a quadratic stochastic operator
///
///   x'_k = sum_{i,j} p(i,j,k) x_i x_j.
///
/// Storage is dense over unordered pairs i <= j, one length-m row per pair, so
/// symmetry holds by construction. A tensor can only be obtained through
/// build_tensor or convex_combine, both of which validate nonnegativity and
/// unit row sums.
class CoefficientTensor {
 public:
  int dim() const noexcept { return m_; }
  /// 1-based, symmetric in (i, j).
  double at(int i, int j, int k) const;
  /// Distribution over k for the parent pair (i, j), 1-based.
  std::span<const double> row(int i, int j) const;

  /// Raw evaluation of the quadratic form; `out` receives the unnormalized image.
  void evaluate(std::span<const double> x, std::span<double> out) const;

  bool operator==(const CoefficientTensor&) const = default;

 private:
  friend CoefficientTensor make_validated_tensor(int m, std::vector<double> data);
  CoefficientTensor(int m, std::vector<double> data) : m_(m), data_(std::move(data)) {}

  std::size_t pair_offset(int i0, int j0) const noexcept;  // 0-based, i0 <= j0

  int m_ = 0;
  std::vector<double> data_;
};

struct TensorEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Builds and validates a tensor from 1-based entries. Omitted entries are
/// zero. An entry with i > j is mirrored; conflicting values for the same
/// symmetric slot raise AsymmetricInput.
CoefficientTensor build_tensor(int m, std::span<const TensorEntry> entries);

bool is_volterra(const CoefficientTensor& t);

/// x' = V(x), renormalized onto the simplex.
SimplexPoint apply(const CoefficientTensor& t, const SimplexPoint& x);

/// Entrywise w * a + (1 - w) * b.
CoefficientTensor convex_combine(const CoefficientTensor& a, const CoefficientTensor& b, double w);

/// Jacobian of the raw quadratic map: J(k, j) = 2 sum_i p(i,j,k) x_i.
/// Row index k is the output coordinate, column j the input (both 0-based).
Eigen::MatrixXd jacobian(const CoefficientTensor& t, std::span<const double> x);
inline Eigen::MatrixXd jacobian(const CoefficientTensor& t, const SimplexPoint& x) {
  return jacobian(t, x.coords());
}

struct TrajectoryPoint {
  std::int64_t step = 0;
  SimplexPoint x;
};

struct Trajectory {
  std::string label;
  std::int64_t stride = 1;
  std::vector<TrajectoryPoint> points;

  const SimplexPoint& final_point() const { return points.back().x; }
};

/// Records x^(0), every stride-th iterate and always the final one.
Trajectory iterate(const CoefficientTensor& t, const SimplexPoint& x0, std::int64_t n_steps,
                   std::int64_t stride = 1, std::string label = {});

/// n-th iterate without recording.
SimplexPoint iterate_to(const CoefficientTensor& t, const SimplexPoint& x0, std::int64_t n_steps);

/// A_n = (1/n) sum_{k<n} x^(k) at each checkpoint, in one pass.
std::vector<SimplexPoint> cesaro_means(const CoefficientTensor& t, const SimplexPoint& x0,
                                       std::span<const std::int64_t> checkpoints);

/// Text exchange format: a line "m <int>", then "i j k value" lines
/// (1-based, i <= j). Lines starting with '#' and blank lines are ignored.
CoefficientTensor read_tensor(std::istream& in);
CoefficientTensor read_tensor_file(const std::string& path);
void write_tensor(std::ostream& out, const CoefficientTensor& t);

}  // namespace qso
