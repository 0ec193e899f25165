#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qso/simplex.hpp"
#include "qso/tensor.hpp"

namespace qso {

inline constexpr double kPeriodTolerance = 1e-9;
inline constexpr double kClusterTolerance = 1e-6;

/// Smallest s <= s_max such that every pair of tail points s steps apart lies
/// within tol; the tail is the last 2 * s_max recorded points.
/// Throws InsufficientTail unless the trajectory has stride 1 and at least
/// 2 * s_max points.
std::optional<int> detect_period(const Trajectory& traj, int s_max, double tol = kPeriodTolerance);

struct OmegaSet {
  std::vector<SimplexPoint> cluster_points;  // canonical order
  std::optional<int> detected_period;
  std::int64_t burn_in = 0;
  std::int64_t window = 0;
  double cluster_tol = kClusterTolerance;
  int period_search_max = 0;
  bool boundary_start = false;
};

/// Iterates burn_in steps, then groups the next `window` points greedily: a
/// point joins the first cluster whose founding member is within cluster_tol.
/// Each cluster is reported by its latest member. s_max defaults to
/// min(50, window / 2).
OmegaSet omega_estimate(const CoefficientTensor& t, const SimplexPoint& x0, std::int64_t burn_in,
                        std::int64_t window, double cluster_tol = kClusterTolerance, int s_max = 0);

}  // namespace qso
