#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qso {

/// Post-normalization bound on |sum(x) - 1|; negatives above -kSumTolerance are clamped.
inline constexpr double kSumTolerance = 1e-12;
/// Ingest bound on |sum(raw) - 1| before renormalization.
inline constexpr double kIngestTolerance = 1e-9;
inline constexpr double kDefaultZeroThreshold = 1e-9;

/// A probability vector on m >= 2 symbols.
///
/// Instances are immutable. Every constructor path leaves the coordinates
/// nonnegative with a sum within kSumTolerance of one. Indices in the public
/// accessors are 1-based to match the notation used in reports and the CLI;
/// `coords()` exposes the raw 0-based storage for numeric kernels.
class SimplexPoint {
 public:
  /// Checks membership of raw input and renormalizes it (see validate_point).
  static SimplexPoint validate(std::span<const double> raw);
  /// Clamps negatives to zero and divides by the sum. No ingest tolerance is
  /// applied, so this is for operator outputs that are in the simplex up to
  /// rounding.
  static SimplexPoint normalized(std::vector<double> coords);
  static SimplexPoint vertex(int m, int i);
  static SimplexPoint center(int m);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  /// 1-based coordinate access.
  double at(int i) const;
  double operator[](std::size_t index0) const noexcept { return coords_[index0]; }
  std::span<const double> coords() const noexcept { return coords_; }
  double last() const noexcept { return coords_.back(); }

  bool operator==(const SimplexPoint&) const = default;

 private:
  explicit SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

SimplexPoint validate_point(std::span<const double> raw);

/// {i : x_i > tau_zero}, 1-based and ascending.
std::vector<int> support(const SimplexPoint& x, double tau_zero = kDefaultZeroThreshold);

bool on_boundary(const SimplexPoint& x, double tau_zero = kDefaultZeroThreshold);

double sup_distance(std::span<const double> a, std::span<const double> b);
inline double sup_distance(const SimplexPoint& a, const SimplexPoint& b) {
  return sup_distance(a.coords(), b.coords());
}

/// Parses "0.1,0.2,0.7" into a validated point.
SimplexPoint parse_point(std::string_view text);

/// A permutation of {1, ..., n} with its disjoint-cycle decomposition.
///
/// Cycles are stored canonically: each starts at its smallest symbol and the
/// list is ordered by that symbol. Fixed points appear as 1-cycles.
class Permutation {
 public:
  static Permutation identity(int n);
  /// images[k-1] = pi(k). Throws unless the list is a bijection of {1..n}.
  static Permutation from_images(std::vector<int> images);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  /// pi(k) for 1 <= k <= n; throws IndexOutOfRange otherwise.
  int operator()(int k) const;
  const std::vector<int>& images() const noexcept { return images_; }
  const std::vector<std::vector<int>>& cycles() const noexcept { return cycles_; }
  /// lcm of the cycle lengths.
  std::int64_t order() const noexcept { return order_; }
  bool is_identity() const noexcept { return order_ == 1; }

  /// "(1 2)(3 4 5)"; fixed points are omitted and the identity prints as "()".
  std::string to_string() const;

  bool operator==(const Permutation& other) const { return images_ == other.images_; }

 private:
  explicit Permutation(std::vector<int> images);
  std::vector<int> images_;
  std::vector<std::vector<int>> cycles_;
  std::int64_t order_ = 1;
};

/// Parses cycle notation such as "(1 2)(3 4 5)" over {1..n}. Omitted symbols
/// are fixed; "" and "()" denote the identity.
Permutation parse_cycles(std::string_view text, int n);
std::int64_t permutation_order(const Permutation& p);
int apply_permutation(const Permutation& p, int k);

}  // namespace qso
