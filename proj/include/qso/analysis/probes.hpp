#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qso/simplex.hpp"
#include "qso/tensor.hpp"

namespace qso {

// ---- contraction of coordinate spreads under ALPHA_COMBINATION ------------

struct ContractionReport {
  int s = 1;                       // order of pi
  double bound = 1.0;              // 1 - alpha + alpha^s
  double worst_factor = 0.0;       // max over s-blocks of spread ratio
  double worst_pair_factor = 0.0;  // per-pair ratio, diagnostic only
  int blocks = 0;
  std::int64_t entry_step = 0;     // first n with x_m^(n) < 1/2
  bool vacuous = false;            // bound == 1
  bool passed = false;
};

inline constexpr std::int64_t kContractionEntryCap = 100000;
inline constexpr double kSpreadFloor = 1e-10;

/// After the trajectory enters {x_m < 1/2}, measures over consecutive s-step
/// blocks that stay in that region the ratio
///   max_{u<v<m} |x_u^(n+s) - x_v^(n+s)| / max_{u<v<m} |x_u^(n) - x_v^(n)|
/// and compares the worst one with 1 - alpha + alpha^s (+ tol). Blocks whose
/// starting spread is below kSpreadFloor are not counted.
/// Throws NeverEntersRegion.
ContractionReport contraction_report(int m, const Permutation& pi, double alpha, const SimplexPoint& x0,
                                     double tol = 1e-9, int max_blocks = 200);

// ---- Cesaro fluctuation ---------------------------------------------------

struct ErgodicityReport {
  std::vector<std::int64_t> checkpoints;
  std::vector<SimplexPoint> means;
  std::vector<double> min_coordinate;  // min_k x_k^(n) at each checkpoint n
  double fluctuation = 0.0;            // max pairwise sup-distance of the means
};

/// Checkpoints must be strictly increasing and at most 1e7.
ErgodicityReport ergodicity_probe(const CoefficientTensor& t, const SimplexPoint& x0,
                                  std::span<const std::int64_t> checkpoints);

// ---- regular operator bounds ----------------------------------------------

/// (1/(m-2)^m) prod_i (2 + (m-4)(x_i + x_{i+1})), indices cyclic.
double psi(const SimplexPoint& x);

struct PsiBoundReport {
  int m = 0;
  int samples = 0;
  double bound = 0.0;  // (4/m)^m
  double max_psi = 0.0;
  int violations = 0;
  double center_value = 0.0;
  double center_gap = 0.0;  // |psi(c) - bound|
};

/// Requires m >= 5.
PsiBoundReport psi_bound_check(int m, int samples, std::uint64_t seed);

struct MaxNormReport {
  int samples = 0;
  int excluded = 0;
  int violations = 0;     // max x' >= max x
  double min_margin = 0;  // min over samples of max x - max x'
};

/// Regular operator with m = 4: the largest coordinate strictly drops away
/// from the vertices and the center.
MaxNormReport max_norm_check(int samples, std::uint64_t seed);

// ---- absence of long periods under QUASI_STRICT ---------------------------

struct PeriodicSearchReport {
  int n = 0;
  int s = 1;
  int starts = 0;
  int not_converged = 0;
  std::vector<SimplexPoint> fixed_points;
  std::vector<SimplexPoint> period_s_points;
  std::vector<SimplexPoint> counterexamples;
};

/// Multistart Newton on V^n(x) - x for the quasi-strict operator. Each
/// distinct solution is sorted into fixed points, points with x_m = 1/2 and
/// V^s(x) = x, or counterexamples (within 1e-8). `starts` counts the seeded
/// random starts added to the structured ones.
PeriodicSearchReport periodic_absence_search(int m, const Permutation& pi, int n, int starts, std::uint64_t seed,
                                             double tol = 1e-12);

}  // namespace qso
