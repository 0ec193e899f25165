#include <gtest/gtest.h>

#include <algorithm>
#include <complex>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "qso/analysis/fixed_points.hpp"
#include "qso/analysis/newton.hpp"
#include "qso/error.hpp"
#include "qso/families.hpp"

using namespace qso;

namespace {

bool contains(const FixedPointSearch& s, const std::vector<double>& x, double tol = 1e-10) {
  return std::any_of(s.points.begin(), s.points.end(),
                     [&](const FixedPointReport& r) { return oracle::sup(x, r.point.coords()) < tol; });
}

}  // namespace

TEST(FixedPoints, RegularM4FindsVerticesAndCenter) {
  const FixedPointSearch s = find_fixed_points(make_regular(4), {.random_starts = 20, .seed = 1});
  ASSERT_EQ(s.points.size(), 5u);
  EXPECT_TRUE(contains(s, {0.25, 0.25, 0.25, 0.25}));
  for (int k = 0; k < 4; ++k) {
    std::vector<double> e(4, 0.0);
    e[k] = 1.0;
    EXPECT_TRUE(contains(s, e));
  }
  for (const auto& r : s.points) {
    EXPECT_LE(r.residual, 1e-10);
    EXPECT_EQ(r.tangent_eigenvalues.size(), 3u);
  }
  EXPECT_TRUE(std::is_sorted(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) {
    return canonical_less(a.point, b.point);
  }));
}

TEST(FixedPoints, AlphaCombination) {
  const CoefficientTensor t = make_alpha_combination(3, parse_cycles("(1 2)", 2), 0.5);
  const FixedPointSearch s = find_fixed_points(t, {.random_starts = 10, .seed = 2});
  EXPECT_TRUE(contains(s, {0, 0, 1}));
  EXPECT_TRUE(contains(s, {2.0 / 7, 2.0 / 7, 3.0 / 7}));
}

TEST(FixedPoints, QuasiStrict) {
  const CoefficientTensor t = make_quasi_strict(4, parse_cycles("(1 2 3)", 3));
  const FixedPointSearch s = find_fixed_points(t, {.random_starts = 10, .seed = 3});
  EXPECT_TRUE(contains(s, {0, 0, 0, 1}));
  EXPECT_TRUE(contains(s, {1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5}));
}

TEST(FixedPoints, DeterministicForSeed) {
  const CoefficientTensor t = make_regular(5);
  const auto a = find_fixed_points(t, {.random_starts = 8, .seed = 9});
  const auto b = find_fixed_points(t, {.random_starts = 8, .seed = 9});
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].point, b.points[i].point);
}

TEST(Classification, RegularCenterAttracting) {
  for (int m : {4, 5, 8}) {
    const FixedPointReport r = classify_fixed_point(make_regular(m), SimplexPoint::center(m));
    EXPECT_EQ(r.classification, Stability::ATTRACTING);
    for (const auto& z : r.tangent_eigenvalues) EXPECT_LT(std::abs(z), 1e-10);
    EXPECT_NEAR(r.transversal_eigenvalue, 2.0, 1e-12);
  }
}

TEST(Classification, RegularVertexSpectrum) {
  // At e_k the Jacobian is 2 on the diagonal slot of k and 2/(m-2)(J - I) on
  // the remaining block, so the tangent spectrum is {2} plus -2/(m-2) with
  // multiplicity m-2.
  for (int m : {3, 4, 5, 8}) {
    const FixedPointReport r = classify_fixed_point(make_regular(m), SimplexPoint::vertex(m, 1));
    ASSERT_EQ(r.tangent_eigenvalues.size(), static_cast<std::size_t>(m - 1));
    std::vector<double> re;
    for (const auto& z : r.tangent_eigenvalues) {
      EXPECT_NEAR(z.imag(), 0.0, 1e-12);
      re.push_back(z.real());
    }
    std::sort(re.rbegin(), re.rend());
    EXPECT_NEAR(re[0], 2.0, 1e-12);
    for (int i = 1; i < m - 1; ++i) EXPECT_NEAR(re[i], -2.0 / (m - 2), 1e-12);
    const Stability expected = m == 3 ? Stability::REPELLING : m == 4 ? Stability::NON_HYPERBOLIC : Stability::SADDLE;
    EXPECT_EQ(r.classification, expected) << "m = " << m;
  }
}

TEST(Classification, TangentSpectrumPlusTwoIsFullSpectrum) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 3 + trial % 4;
    const CoefficientTensor t = oracle::random_tensor(m, rng);
    const Eigen::MatrixXd j = jacobian(t, rng.interior_point(m));
    std::vector<std::complex<double>> tangent = tangent_spectrum(j);
    tangent.emplace_back(2.0, 0.0);
    Eigen::EigenSolver<Eigen::MatrixXd> full(j, false);
    std::vector<std::complex<double>> all(full.eigenvalues().data(), full.eigenvalues().data() + m);
    // Greedy match of the two multisets.
    for (const auto& z : all) {
      auto best = std::min_element(tangent.begin(), tangent.end(),
                                   [&](const auto& a, const auto& b) { return std::abs(a - z) < std::abs(b - z); });
      EXPECT_LT(std::abs(*best - z), 1e-8);
      tangent.erase(best);
    }
  }
}

TEST(Classification, SpectrumRules) {
  using C = std::complex<double>;
  EXPECT_EQ(classify_spectrum({C(0.5), C(0, 0.9)}), Stability::ATTRACTING);
  EXPECT_EQ(classify_spectrum({C(1.5), C(-3)}), Stability::REPELLING);
  EXPECT_EQ(classify_spectrum({C(1.5), C(0.2)}), Stability::SADDLE);
  EXPECT_EQ(classify_spectrum({C(1.0 + 5e-7), C(0.2)}), Stability::NON_HYPERBOLIC);
  EXPECT_EQ(classify_spectrum({C(0.6, 0.8)}), Stability::NON_HYPERBOLIC);
}

TEST(Classification, RejectsNonFixedPoint) {
  try {
    classify_fixed_point(make_regular(4), SimplexPoint::validate(std::vector{0.4, 0.3, 0.2, 0.1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAFixedPoint);
  }
}

TEST(Newton, PeriodTwoPointOfQuasiStrict) {
  const CoefficientTensor t = make_quasi_strict(3, parse_cycles("(1 2)", 2));
  const NewtonResult r = solve_periodic_point(t, 2, SimplexPoint::validate(std::vector{0.3, 0.1, 0.6}));
  ASSERT_TRUE(r.converged);
  EXPECT_LT(periodic_residual(t, r.x, 2), 1e-12);
  EXPECT_NEAR(r.x.last(), 0.5, 1e-10);
}

TEST(Newton, ReachesBoundarySolutions) {
  const CoefficientTensor t = make_regular(4);
  const NewtonResult r = solve_periodic_point(t, 1, SimplexPoint::validate(std::vector{0.97, 0.01, 0.01, 0.01}));
  ASSERT_TRUE(r.converged);
  EXPECT_LT(r.residual, 1e-12);
}
