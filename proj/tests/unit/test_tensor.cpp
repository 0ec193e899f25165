#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "qso/error.hpp"
#include "qso/families.hpp"
#include "qso/tensor.hpp"

using namespace qso;

TEST(Tensor, BuildMirrorsAndValidates) {
  const std::vector<TensorEntry> entries{{1, 1, 1, 1.0}, {2, 2, 2, 1.0}, {2, 1, 1, 0.5}, {1, 2, 2, 0.5}};
  const CoefficientTensor t = build_tensor(2, entries);
  EXPECT_EQ(t.at(1, 2, 1), 0.5);
  EXPECT_EQ(t.at(2, 1, 2), 0.5);
}

TEST(Tensor, BuildErrors) {
  const auto code = [](std::vector<TensorEntry> e) {
    try {
      build_tensor(2, e);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code({{1, 1, 1, 1.0}, {2, 2, 2, 1.0}, {1, 2, 1, 0.4}}), ErrorCode::RowSumNotOne);
  EXPECT_EQ(code({{1, 1, 1, 1.0}, {2, 2, 2, 1.0}, {1, 2, 1, 0.5}, {2, 1, 1, 0.6}, {1, 2, 2, 0.5}}),
            ErrorCode::AsymmetricInput);
  EXPECT_EQ(code({{1, 1, 1, 1.2}, {1, 1, 2, -0.2}, {2, 2, 2, 1.0}, {1, 2, 1, 1.0}}), ErrorCode::NegativeCoefficient);
  EXPECT_EQ(code({{1, 1, 3, 1.0}}), ErrorCode::IndexOutOfRange);
}

TEST(Tensor, ApplyMatchesRegularFormula) {
  Rng rng(11);
  for (int m : {3, 4, 6}) {
    const CoefficientTensor t = make_regular(m);
    for (int s = 0; s < 20; ++s) {
      const SimplexPoint x = rng.interior_point(m);
      const oracle::Vec xv(x.coords().begin(), x.coords().end());
      EXPECT_LT(oracle::sup(oracle::regular(xv), apply(t, x).coords()), 1e-15);
    }
  }
}

TEST(Tensor, VolterraDetection) {
  EXPECT_FALSE(is_volterra(make_s2(Family::V0)));
  EXPECT_FALSE(is_volterra(make_s2(Family::V1)));
  EXPECT_TRUE(is_volterra(make_s2(Family::V3)));
  EXPECT_TRUE(is_volterra(make_s2(Family::V2)));
  EXPECT_FALSE(is_volterra(make_regular(4)));

  // An off-pattern entry of 1e-14 is rounding noise.
  std::vector<TensorEntry> e{{1, 1, 1, 1.0}, {2, 2, 2, 1.0}, {3, 3, 3, 1.0 - 1e-14}, {3, 3, 1, 1e-14},
                             {1, 2, 1, 0.5}, {1, 2, 2, 0.5}, {1, 3, 1, 0.5}, {1, 3, 3, 0.5},
                             {2, 3, 2, 0.5}, {2, 3, 3, 0.5}};
  EXPECT_TRUE(is_volterra(build_tensor(3, e)));
}

TEST(Tensor, JacobianColumnsSumToTwo) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + trial % 4;
    const CoefficientTensor t = oracle::random_tensor(m, rng);
    const Eigen::MatrixXd j = jacobian(t, rng.interior_point(m));
    for (int c = 0; c < m; ++c) EXPECT_NEAR(j.col(c).sum(), 2.0, 1e-12);
  }
}

TEST(Tensor, JacobianMatchesCentralDifferences) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3 + trial % 4;
    const CoefficientTensor t = oracle::random_tensor(m, rng);
    const SimplexPoint x = rng.interior_point(m);
    const Eigen::MatrixXd j = jacobian(t, x);
    const double h = 1e-5;
    for (int c = 0; c < m; ++c) {
      std::vector<double> p(x.coords().begin(), x.coords().end()), q = p, fp(m), fq(m);
      p[c] += h;
      q[c] -= h;
      t.evaluate(p, fp);
      t.evaluate(q, fq);
      for (int r = 0; r < m; ++r) EXPECT_NEAR((fp[r] - fq[r]) / (2 * h), j(r, c), 1e-6);
    }
  }
}

TEST(Tensor, ConvexCombine) {
  const CoefficientTensor a = make_s2(Family::V0), b = make_s2(Family::V2);
  EXPECT_EQ(convex_combine(a, b, 1.0), a);
  EXPECT_EQ(convex_combine(a, b, 0.0), b);
  EXPECT_NEAR(convex_combine(a, b, 0.25).at(2, 3, 1), 0.25 * a.at(2, 3, 1) + 0.75 * b.at(2, 3, 1), 1e-16);
  EXPECT_THROW(convex_combine(a, b, 1.5), Error);
  EXPECT_THROW(convex_combine(a, make_regular(4), 0.5), Error);
}

TEST(Tensor, TextRoundTrip) {
  Rng rng(3);
  const CoefficientTensor t = oracle::random_tensor(4, rng);
  std::stringstream ss;
  write_tensor(ss, t);
  EXPECT_EQ(read_tensor(ss), t);

  std::stringstream bad("m 2\n1 1 1 1\n2 2 2 1\n1 2 1 0.5\n1 2 2 0.5\n1 2 x\n");
  EXPECT_THROW(read_tensor(bad), Error);
}

TEST(Trajectory, RecordsStrideAndFinal) {
  const CoefficientTensor t = make_regular(3);
  const Trajectory traj = iterate(t, SimplexPoint::validate(std::vector{0.6, 0.3, 0.1}), 10, 4);
  ASSERT_EQ(traj.points.size(), 4u);
  EXPECT_EQ(traj.points[1].step, 4);
  EXPECT_EQ(traj.points.back().step, 10);
  EXPECT_EQ(traj.final_point(), iterate_to(t, traj.points[0].x, 10));
  EXPECT_EQ(iterate(t, traj.points[0].x, 0).points.size(), 1u);
}

TEST(Trajectory, CesaroMeansAgainstDirectAverage) {
  const CoefficientTensor t = make_s2(Family::V2);
  const SimplexPoint x0 = SimplexPoint::validate(std::vector{0.3, 0.3, 0.4});
  const std::vector<std::int64_t> checkpoints{1, 7, 50};
  const auto means = cesaro_means(t, x0, checkpoints);
  oracle::Vec sum(3, 0.0);
  SimplexPoint x = x0;
  std::size_t c = 0;
  for (int n = 1; n <= 50; ++n) {
    for (int k = 0; k < 3; ++k) sum[k] += x[k];
    x = apply(t, x);
    if (n == checkpoints[c]) {
      oracle::Vec avg(3);
      for (int k = 0; k < 3; ++k) avg[k] = sum[k] / n;
      EXPECT_LT(oracle::sup(avg, means[c].coords()), 1e-15);
      ++c;
    }
  }
  const std::vector<std::int64_t> at_fixed{10, 100};
  for (const auto& m : cesaro_means(t, SimplexPoint::center(3), at_fixed)) {
    EXPECT_LT(sup_distance(m, SimplexPoint::center(3)), 1e-15);
  }
}
