#include "qso/analysis/limit_sets.hpp"

#include <algorithm>

#include "qso/analysis/fixed_points.hpp"
#include "qso/error.hpp"

namespace qso {

std::optional<int> detect_period(const Trajectory& traj, int s_max, double tol) {
  if (s_max < 1) throw Error(ErrorCode::InvalidArgument, "s_max must be >= 1");
  const std::size_t need = 2 * static_cast<std::size_t>(s_max);
  if (traj.stride != 1 || traj.points.size() < need) {
    throw Error(ErrorCode::InsufficientTail,
                "need " + std::to_string(need) + " points at stride 1, have " + std::to_string(traj.points.size()));
  }
  const std::size_t begin = traj.points.size() - need;
  for (int s = 1; s <= s_max; ++s) {
    bool holds = true;
    for (std::size_t i = begin; holds && i + static_cast<std::size_t>(s) < traj.points.size(); ++i) {
      holds = sup_distance(traj.points[i].x, traj.points[i + static_cast<std::size_t>(s)].x) < tol;
    }
    if (holds) return s;
  }
  return std::nullopt;
}

OmegaSet omega_estimate(const CoefficientTensor& t, const SimplexPoint& x0, std::int64_t burn_in,
                        std::int64_t window, double cluster_tol, int s_max) {
  if (burn_in < 1 || window < 1) throw Error(ErrorCode::InvalidArgument, "burn_in and window must be >= 1");
  if (!(cluster_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "cluster_tol must be positive");
  OmegaSet out;
  out.burn_in = burn_in;
  out.window = window;
  out.cluster_tol = cluster_tol;
  out.boundary_start = on_boundary(x0);
  if (s_max <= 0) s_max = static_cast<int>(std::min<std::int64_t>(50, window / 2));
  out.period_search_max = s_max;

  const SimplexPoint start = iterate_to(t, x0, burn_in);
  Trajectory tail = iterate(t, start, window - 1, 1);

  std::vector<SimplexPoint> founders;
  std::vector<SimplexPoint> latest;
  for (const auto& p : tail.points) {
    auto it = std::find_if(founders.begin(), founders.end(),
                           [&](const SimplexPoint& f) { return sup_distance(f, p.x) <= cluster_tol; });
    if (it == founders.end()) {
      founders.push_back(p.x);
      latest.push_back(p.x);
    } else {
      latest[static_cast<std::size_t>(it - founders.begin())] = p.x;
    }
  }
  std::sort(latest.begin(), latest.end(), canonical_less);
  out.cluster_points = std::move(latest);
  if (s_max >= 1 && static_cast<std::int64_t>(tail.points.size()) >= 2 * static_cast<std::int64_t>(s_max)) {
    out.detected_period = detect_period(tail, s_max);
  }
  return out;
}

}  // namespace qso
