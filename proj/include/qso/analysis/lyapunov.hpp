#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qso/families.hpp"
#include "qso/simplex.hpp"

namespace qso {

enum class LyapunovId { CYCLIC_PRODUCT, CYCLE_PRODUCT, CYCLE_SUM, LAST_COORD, ABS_DIFF_PRODUCT, COORD_PRODUCT };
enum class Direction { NON_INCREASING, NON_DECREASING };

std::string_view to_string(LyapunovId id);
std::string_view to_string(Direction d);
/// Throws InvalidArgument.
LyapunovId parse_lyapunov_id(std::string_view name);

struct LyapunovTerm {
  LyapunovId id = LyapunovId::CYCLIC_PRODUCT;
  /// Symbols of the cycle for CYCLE_PRODUCT / CYCLE_SUM (1-based), empty otherwise.
  std::vector<int> cycle;
  double weight = 1.0;
};

/// A single catalog function or a nonnegative combination of catalog
/// functions sharing one direction.
struct LyapunovFn {
  std::vector<LyapunovTerm> terms;
  Direction direction = Direction::NON_INCREASING;
  /// First iterate from which monotonicity is checked.
  int n0 = 0;

  double operator()(const SimplexPoint& x) const;
  std::string name() const;
};

/// Catalog entry without a cycle argument.
LyapunovFn lyapunov_function(LyapunovId id);
/// CYCLE_PRODUCT(l) or CYCLE_SUM(l) for the l-th cycle (1-based, canonical
/// order) of pi.
LyapunovFn cycle_function(LyapunovId id, const Permutation& pi, int l);
/// Throws InvalidArgument on negative weights, mixed directions or an empty list.
LyapunovFn composite(std::vector<LyapunovFn> parts, std::vector<double> weights);

/// Whether the catalog applicability table covers this operator.
bool is_applicable(const LyapunovFn& fn, const Operator& op);

struct LyapunovReport {
  std::string function;
  Direction direction = Direction::NON_INCREASING;
  int n0 = 0;
  int samples = 0;
  int horizon = 0;
  double slack = 0.0;
  std::int64_t comparisons = 0;
  std::int64_t violations = 0;
  double worst_violation = 0.0;  // largest step in the forbidden direction
  int worst_sample = -1;
  int worst_step = -1;
};

inline constexpr double kLyapunovSlack = 1e-12;

/// Follows `samples` seeded interior trajectories for `horizon` steps and
/// counts steps that move fn against its direction by more than slack.
/// Throws InapplicableFunction.
LyapunovReport check_lyapunov(const Operator& op, const LyapunovFn& fn, int samples, int horizon,
                              std::uint64_t seed, double slack = kLyapunovSlack);

}  // namespace qso
