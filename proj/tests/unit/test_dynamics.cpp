#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qso/analysis/invariant_sets.hpp"
#include "qso/analysis/limit_sets.hpp"
#include "qso/analysis/lyapunov.hpp"
#include "qso/error.hpp"
#include "qso/families.hpp"

using namespace qso;

namespace {

Operator op(Family f, int m = 3, const char* perm = nullptr, std::optional<double> p = std::nullopt) {
  std::optional<Permutation> pi;
  if (perm) pi = parse_cycles(perm, m - 1);
  return make_operator({f, m, pi, p});
}

Trajectory constructed(const std::vector<std::vector<double>>& cycle, int length) {
  Trajectory t;
  for (int n = 0; n < length; ++n) t.points.push_back({n, SimplexPoint::validate(cycle[n % cycle.size()])});
  return t;
}

}  // namespace

// ---- Lyapunov ---------------------------------------------------------------

TEST(Lyapunov, CatalogValues) {
  const SimplexPoint x = SimplexPoint::validate(std::vector{0.5, 0.3, 0.2});
  EXPECT_NEAR(lyapunov_function(LyapunovId::CYCLIC_PRODUCT)(x), 0.2 * 0.1 * 0.3, 1e-16);
  EXPECT_NEAR(lyapunov_function(LyapunovId::ABS_DIFF_PRODUCT)(x), 0.2 * 0.1 * 0.3, 1e-16);
  EXPECT_NEAR(lyapunov_function(LyapunovId::COORD_PRODUCT)(x), 0.03, 1e-16);
  EXPECT_EQ(lyapunov_function(LyapunovId::LAST_COORD)(x), 0.2);
  const Permutation pi = parse_cycles("(1 2)", 2);
  EXPECT_NEAR(cycle_function(LyapunovId::CYCLE_SUM, pi, 1)(x), 0.8, 1e-16);
  EXPECT_NEAR(cycle_function(LyapunovId::CYCLE_PRODUCT, pi, 1)(x), 0.15, 1e-16);
  EXPECT_EQ(cycle_function(LyapunovId::CYCLE_SUM, pi, 1).n0, 1);
  EXPECT_EQ(cycle_function(LyapunovId::CYCLE_SUM, pi, 1).direction, Direction::NON_DECREASING);
}

TEST(Lyapunov, CyclicProductOnRegular) {
  for (int m : {4, 5, 6, 8}) {
    EXPECT_EQ(check_lyapunov(op(Family::REGULAR, m), lyapunov_function(LyapunovId::CYCLIC_PRODUCT), 100, 100, 1).violations,
              0);
  }
}

TEST(Lyapunov, CycleFunctionsOnQuasiStrict) {
  const Operator v = op(Family::QUASI_STRICT, 6, "(1 2)(3 4 5)");
  for (LyapunovId id : {LyapunovId::CYCLE_PRODUCT, LyapunovId::CYCLE_SUM}) {
    for (int l = 1; l <= 2; ++l) {
      EXPECT_EQ(check_lyapunov(v, cycle_function(id, *v.spec.permutation, l), 100, 100, 3).violations, 0);
    }
  }
  const LyapunovFn mix = composite({cycle_function(LyapunovId::CYCLE_SUM, *v.spec.permutation, 1),
                                    cycle_function(LyapunovId::CYCLE_PRODUCT, *v.spec.permutation, 2)},
                                   {0.5, 2.0});
  EXPECT_EQ(check_lyapunov(v, mix, 50, 100, 4).violations, 0);
}

TEST(Lyapunov, S2Functions) {
  EXPECT_EQ(check_lyapunov(op(Family::GSN_ALPHA, 3, nullptr, 0.5), lyapunov_function(LyapunovId::ABS_DIFF_PRODUCT),
                           50, 100, 5).violations, 0);
  EXPECT_EQ(check_lyapunov(op(Family::JJPH_THETA, 3, nullptr, 0.5), lyapunov_function(LyapunovId::ABS_DIFF_PRODUCT),
                           50, 100, 6).violations, 0);
  for (double lambda : {0.3, 0.7}) {
    EXPECT_EQ(check_lyapunov(op(Family::VALLANDER_SPIRAL, 3, nullptr, lambda),
                             lyapunov_function(LyapunovId::COORD_PRODUCT), 50, 100, 7).violations, 0);
  }
}

TEST(Lyapunov, Applicability) {
  const auto code = [](const Operator& o, const LyapunovFn& f) {
    try {
      check_lyapunov(o, f, 1, 1, 0);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code(op(Family::V2), lyapunov_function(LyapunovId::CYCLIC_PRODUCT)), ErrorCode::InapplicableFunction);
  EXPECT_EQ(code(op(Family::REGULAR, 3), lyapunov_function(LyapunovId::CYCLIC_PRODUCT)), ErrorCode::InapplicableFunction);
  EXPECT_EQ(code(op(Family::GSN_ALPHA, 3, nullptr, 0.4), lyapunov_function(LyapunovId::ABS_DIFF_PRODUCT)),
            ErrorCode::InapplicableFunction);
  EXPECT_EQ(code(op(Family::VALLANDER_SPIRAL, 3, nullptr, 0.5), lyapunov_function(LyapunovId::COORD_PRODUCT)),
            ErrorCode::InapplicableFunction);
  const Permutation other = parse_cycles("(1 3)", 5);
  EXPECT_EQ(code(op(Family::QUASI_STRICT, 6, "(1 2)(3 4 5)"), cycle_function(LyapunovId::CYCLE_SUM, other, 1)),
            ErrorCode::InapplicableFunction);
  EXPECT_THROW(lyapunov_function(LyapunovId::CYCLE_SUM), Error);
  EXPECT_THROW(composite({lyapunov_function(LyapunovId::LAST_COORD)}, {-1.0}), Error);
  EXPECT_THROW(composite({lyapunov_function(LyapunovId::LAST_COORD),
                          cycle_function(LyapunovId::CYCLE_SUM, other, 1)},
                         {1.0, 1.0}),
               Error);
}

TEST(Lyapunov, ViolationsAreCounted) {
  // On the quasi-strict operator the cycle sum can drop during the first step
  // (x_m < 1/2); with n0 forced to 0 that shows up.
  const Operator v = op(Family::QUASI_STRICT, 3, "(1 2)");
  LyapunovFn fn = cycle_function(LyapunovId::CYCLE_SUM, *v.spec.permutation, 1);
  fn.n0 = 0;
  const LyapunovReport r = check_lyapunov(v, fn, 50, 5, 8);
  EXPECT_GT(r.violations, 0);
  EXPECT_GT(r.worst_violation, 0.0);
  EXPECT_EQ(r.worst_step, 0);
}

// ---- periods and omega sets --------------------------------------------------

TEST(Period, ConstructedSequences) {
  const std::vector<std::vector<double>> a{{0.2, 0.3, 0.5}}, b{{0.2, 0.3, 0.5}, {0.3, 0.2, 0.5}, {0.1, 0.1, 0.8}};
  EXPECT_EQ(detect_period(constructed(a, 20), 5), 1);
  const Trajectory three = constructed(b, 40);
  EXPECT_EQ(detect_period(three, 10), 3);
  EXPECT_EQ(detect_period(three, 2), std::nullopt);
  EXPECT_EQ(detect_period(three, 20), 3);
}

TEST(Period, TailRequirements) {
  const std::vector<std::vector<double>> a{{0.2, 0.3, 0.5}};
  Trajectory t = constructed(a, 9);
  EXPECT_THROW(detect_period(t, 5), Error);
  t = constructed(a, 20);
  t.stride = 2;
  try {
    detect_period(t, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientTail);
  }
}

TEST(Period, QuasiStrictTwoCycle) {
  const Operator v = op(Family::QUASI_STRICT, 3, "(1 2)");
  const Trajectory t = iterate(v.tensor, SimplexPoint::validate(std::vector{0.3, 0.2, 0.5}), 40);
  EXPECT_EQ(detect_period(t, 10), 2);
}

TEST(Omega, RegularSingleCluster) {
  Rng rng(40);
  const OmegaSet w = omega_estimate(make_regular(5), rng.interior_point(5), 500, 50);
  ASSERT_EQ(w.cluster_points.size(), 1u);
  EXPECT_LT(sup_distance(w.cluster_points[0], SimplexPoint::center(5)), 1e-12);
  EXPECT_EQ(w.detected_period, 1);
  EXPECT_FALSE(w.boundary_start);
}

TEST(Omega, KhukrTwoCycle) {
  const OmegaSet w = omega_estimate(make_s2(Family::KHUKR), SimplexPoint::validate(std::vector{0.4, 0.36, 0.24}), 1000, 100);
  ASSERT_EQ(w.cluster_points.size(), 2u);
  // tau = x2/x3 = 1.5 is preserved up to swapping, so the limit is
  // (1/2, tau/(2(1+tau)), 1/(2(1+tau))) and its swap.
  const double tau = 1.5;
  EXPECT_LT(oracle::sup({0.5, 1 / (2 * (1 + tau)), tau / (2 * (1 + tau))}, w.cluster_points[0].coords()), 1e-6);
  EXPECT_LT(oracle::sup({0.5, tau / (2 * (1 + tau)), 1 / (2 * (1 + tau))}, w.cluster_points[1].coords()), 1e-6);
  EXPECT_EQ(w.detected_period, 2);
}

TEST(Omega, QuasiStrictSixCycle) {
  const Operator v = op(Family::QUASI_STRICT, 6, "(1 2)(3 4 5)");
  Rng rng(41);
  const OmegaSet w = omega_estimate(v.tensor, rng.interior_point(6), 1000, 120);
  ASSERT_EQ(w.cluster_points.size(), 6u);
  EXPECT_EQ(w.detected_period, 6);
  for (const auto& p : w.cluster_points) {
    EXPECT_NEAR(p.last(), 0.5, 1e-8);
    const SimplexPoint image = apply(v.tensor, p);
    double nearest = 1.0;
    for (const auto& q : w.cluster_points) nearest = std::min(nearest, sup_distance(image, q));
    EXPECT_LT(nearest, 1e-8);
  }
}

TEST(Omega, FlagsBoundaryStart) {
  const OmegaSet w = omega_estimate(make_regular(4), SimplexPoint::vertex(4, 2), 10, 10);
  EXPECT_TRUE(w.boundary_start);
  EXPECT_EQ(w.cluster_points.size(), 1u);
}

// ---- invariant sets ------------------------------------------------------------

TEST(InvariantSets, M0) {
  const Operator v = op(Family::QUASI_STRICT, 5, "(1 2)(3 4)");
  const InvariantSetReport r = check_invariant_set(v, {InvariantSetId::M0}, 100, 50, 1);
  EXPECT_EQ(r.max_defect, 0.0);
}

TEST(InvariantSets, MOmegaEqualOrders) {
  const Operator v = op(Family::QUASI_STRICT, 5, "(1 2)(3 4)");
  const InvariantSetReport r =
      check_invariant_set(v, {InvariantSetId::M_OMEGA, 1, 2, 2.0}, 100, 50, 2);
  EXPECT_LE(r.initial_max_defect, kMembershipSampleDefect);
  EXPECT_LT(r.max_defect, 1e-9);
}

TEST(InvariantSets, MOmegaUnequalOrdersIsMeasured) {
  const Operator v = op(Family::QUASI_STRICT, 6, "(1 2)(3 4 5)");
  const InvariantSetReport r = check_invariant_set(v, {InvariantSetId::M_OMEGA, 1, 2, 2.0}, 20, 20, 3);
  EXPECT_LE(r.initial_max_defect, kMembershipSampleDefect);
  EXPECT_TRUE(std::isfinite(r.max_defect));
}

TEST(InvariantSets, KhukrAndVallander) {
  EXPECT_LT(check_invariant_set(op(Family::KHUKR), {InvariantSetId::KHUKR_M_TAU, 1, 2, 1.0, 1.5}, 100, 50, 4).max_defect,
            1e-9);
  EXPECT_LT(check_invariant_set(op(Family::VALLANDER_THETA, 3, nullptr, 0.3), {InvariantSetId::VALLANDER_DIAG}, 100, 50, 5)
                .max_defect,
            1e-12);
}

TEST(InvariantSets, Inapplicable) {
  try {
    check_invariant_set(op(Family::V2), {InvariantSetId::M0}, 1, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InapplicableSet);
  }
  EXPECT_THROW(check_invariant_set(op(Family::QUASI_STRICT, 5, "(1 2)(3 4)"), {InvariantSetId::M_OMEGA, 1, 7, 2.0}, 1, 1, 0),
               Error);
}
