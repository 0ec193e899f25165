#include "qso/analysis/probes.hpp"

#include <algorithm>
#include <cmath>

#include "qso/analysis/fixed_points.hpp"
#include "qso/analysis/newton.hpp"
#include "qso/error.hpp"
#include "qso/families.hpp"
#include "qso/random.hpp"

namespace qso {

namespace {

double head_spread(const SimplexPoint& x) {
  const auto c = x.coords().first(static_cast<std::size_t>(x.dim() - 1));
  const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
  return *hi - *lo;
}

}  // namespace

ContractionReport contraction_report(int m, const Permutation& pi, double alpha, const SimplexPoint& x0, double tol,
                                     int max_blocks) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::DomainViolation, "alpha must lie in (0, 1)");
  if (x0.dim() != m) throw Error(ErrorCode::DimensionMismatch, "x0 has the wrong dimension");
  if (on_boundary(x0)) throw Error(ErrorCode::DomainViolation, "x0 must be interior");
  const CoefficientTensor t = make_alpha_combination(m, pi, alpha);

  ContractionReport r;
  r.s = static_cast<int>(pi.order());
  r.bound = 1.0 - alpha + std::pow(alpha, r.s);
  r.vacuous = r.bound >= 1.0;

  SimplexPoint x = x0;
  std::int64_t n = 0;
  while (!(x.last() < 0.5)) {
    if (n >= kContractionEntryCap) {
      throw Error(ErrorCode::NeverEntersRegion, "x_m stayed >= 1/2 for " + std::to_string(n) + " steps");
    }
    x = apply(t, x);
    ++n;
  }
  r.entry_step = n;

  std::int64_t steps = 0;
  while (r.blocks < max_blocks && steps < kContractionEntryCap) {
    const SimplexPoint start = x;
    const double spread0 = head_spread(start);
    if (spread0 <= kSpreadFloor) break;
    bool inside = start.last() < 0.5;
    for (int j = 0; j < r.s; ++j) {
      x = apply(t, x);
      inside = inside && x.last() < 0.5;
    }
    steps += r.s;
    if (!inside) continue;
    ++r.blocks;
    r.worst_factor = std::max(r.worst_factor, head_spread(x) / spread0);
    for (int u = 0; u < m - 1; ++u) {
      for (int v = u + 1; v < m - 1; ++v) {
        const double d0 = std::abs(start[u] - start[v]);
        if (d0 > kSpreadFloor) r.worst_pair_factor = std::max(r.worst_pair_factor, std::abs(x[u] - x[v]) / d0);
      }
    }
  }
  r.passed = r.worst_factor <= r.bound + tol;
  return r;
}

ErgodicityReport ergodicity_probe(const CoefficientTensor& t, const SimplexPoint& x0,
                                  std::span<const std::int64_t> checkpoints) {
  if (checkpoints.empty()) throw Error(ErrorCode::InvalidArgument, "at least one checkpoint required");
  if (checkpoints.back() > 10'000'000) throw Error(ErrorCode::InvalidArgument, "checkpoints are capped at 1e7");
  ErgodicityReport r;
  r.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  r.means = cesaro_means(t, x0, checkpoints);
  SimplexPoint x = x0;
  std::int64_t at = 0;
  for (std::int64_t c : checkpoints) {
    x = iterate_to(t, x, c - at);
    at = c;
    r.min_coordinate.push_back(*std::min_element(x.coords().begin(), x.coords().end()));
  }
  for (std::size_t a = 0; a < r.means.size(); ++a) {
    for (std::size_t b = a + 1; b < r.means.size(); ++b) {
      r.fluctuation = std::max(r.fluctuation, sup_distance(r.means[a], r.means[b]));
    }
  }
  return r;
}

double psi(const SimplexPoint& x) {
  const int m = x.dim();
  double p = 1.0;
  for (int i = 0; i < m; ++i) p *= (2.0 + (m - 4) * (x[i] + x[(i + 1) % m])) / (m - 2);
  return p;
}

PsiBoundReport psi_bound_check(int m, int samples, std::uint64_t seed) {
  if (m < 5) throw Error(ErrorCode::DimensionTooSmall, "psi bound check needs m >= 5");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  PsiBoundReport r;
  r.m = m;
  r.samples = samples;
  r.bound = std::pow(4.0 / m, m);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const double v = psi(rng.interior_point(m));
    r.max_psi = std::max(r.max_psi, v);
    if (v > r.bound + 1e-12) ++r.violations;
  }
  r.center_value = psi(SimplexPoint::center(m));
  r.center_gap = std::abs(r.center_value - r.bound);
  return r;
}

MaxNormReport max_norm_check(int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  const CoefficientTensor t = make_regular(4);
  std::vector<SimplexPoint> fixed;
  for (int k = 1; k <= 4; ++k) fixed.push_back(SimplexPoint::vertex(4, k));
  fixed.push_back(SimplexPoint::center(4));
  MaxNormReport r;
  r.samples = samples;
  r.min_margin = INFINITY;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const SimplexPoint x = rng.interior_point(4);
    if (std::any_of(fixed.begin(), fixed.end(), [&](const SimplexPoint& f) { return sup_distance(f, x) < 1e-9; })) {
      ++r.excluded;
      continue;
    }
    const SimplexPoint y = apply(t, x);
    const double margin = *std::max_element(x.coords().begin(), x.coords().end()) -
                          *std::max_element(y.coords().begin(), y.coords().end());
    r.min_margin = std::min(r.min_margin, margin);
    if (!(margin > 0.0)) ++r.violations;
  }
  return r;
}

PeriodicSearchReport periodic_absence_search(int m, const Permutation& pi, int n, int starts, std::uint64_t seed,
                                             double tol) {
  if (n < 1 || starts < 0) throw Error(ErrorCode::InvalidArgument, "n >= 1 and starts >= 0 required");
  const CoefficientTensor t = make_quasi_strict(m, pi);
  PeriodicSearchReport r;
  r.n = n;
  r.s = static_cast<int>(pi.order());

  std::vector<SimplexPoint> start_points = structured_starts(m);
  Rng rng(seed);
  for (int i = 0; i < starts; ++i) start_points.push_back(rng.interior_point(m));
  r.starts = static_cast<int>(start_points.size());

  std::vector<SimplexPoint> solutions;
  for (const auto& x0 : start_points) {
    const NewtonResult res = solve_periodic_point(t, n, x0, {tol, 200});
    if (!res.converged) {
      ++r.not_converged;
      continue;
    }
    const bool seen = std::any_of(solutions.begin(), solutions.end(),
                                  [&](const SimplexPoint& p) { return sup_distance(p, res.x) <= 1e-8; });
    if (!seen) solutions.push_back(res.x);
  }
  std::sort(solutions.begin(), solutions.end(), canonical_less);
  for (const auto& x : solutions) {
    if (periodic_residual(t, x, 1) < 1e-8) {
      r.fixed_points.push_back(x);
    } else if (std::abs(x.last() - 0.5) < 1e-8 && periodic_residual(t, x, r.s) < 1e-8) {
      r.period_s_points.push_back(x);
    } else {
      r.counterexamples.push_back(x);
    }
  }
  return r;
}

}  // namespace qso
