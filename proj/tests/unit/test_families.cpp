#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qso/error.hpp"
#include "qso/families.hpp"

using namespace qso;

namespace {

oracle::Vec vec(const SimplexPoint& x) { return {x.coords().begin(), x.coords().end()}; }

ErrorCode validate_code(FamilySpec spec) {
  try {
    validate(spec);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Families, QuasiStrictMatchesFormula) {
  Rng rng(21);
  for (const char* text : {"(1 2)(3 4 5)", "(1 2 3)", "()"}) {
    const int m = std::string(text) == "(1 2 3)" ? 4 : 6;
    const Permutation pi = parse_cycles(text, m - 1);
    const CoefficientTensor t = make_quasi_strict(m, pi);
    for (int s = 0; s < 10; ++s) {
      const SimplexPoint x = rng.interior_point(m);
      EXPECT_LT(oracle::sup(oracle::quasi_strict(vec(x), pi.images()), apply(t, x).coords()), 1e-15);
    }
  }
}

TEST(Families, AlphaCombinationMatchesFormula) {
  Rng rng(22);
  const Permutation pi = parse_cycles("(1 2 3)", 4);
  for (double alpha : {0.0, 0.3, 1.0}) {
    const CoefficientTensor t = make_alpha_combination(5, pi, alpha);
    for (int s = 0; s < 10; ++s) {
      const oracle::Vec x = vec(rng.interior_point(5));
      const oracle::Vec expected = oracle::mix(alpha, oracle::regular(x), oracle::quasi_strict(x, pi.images()));
      EXPECT_LT(oracle::sup(expected, apply(t, SimplexPoint::validate(x)).coords()), 1e-15);
    }
  }
}

TEST(Families, S2BasicsMatchFormulas) {
  const Family basics[] = {Family::V0, Family::V1, Family::V2, Family::V3,
                           Family::V4, Family::V5, Family::V6, Family::V7};
  Rng rng(23);
  for (int b = 0; b < 8; ++b) {
    const CoefficientTensor t = make_s2(basics[b]);
    for (int s = 0; s < 10; ++s) {
      const SimplexPoint x = rng.interior_point(3);
      EXPECT_LT(oracle::sup(oracle::s2(b, vec(x)), apply(t, x).coords()), 1e-15) << to_string(basics[b]);
    }
  }
  const SimplexPoint x = rng.interior_point(3);
  EXPECT_LT(oracle::sup(oracle::s2(2, vec(x)), apply(make_s2(Family::ZAKHAREVICH), x).coords()), 1e-15);
  EXPECT_LT(oracle::sup(oracle::khukr(vec(x)), apply(make_s2(Family::KHUKR), x).coords()), 1e-15);
}

TEST(Families, S2CombinationsMatchFormulas) {
  Rng rng(24);
  struct Case {
    Family family;
    int first, second;  // parameter weights the first basic
  };
  const Case cases[] = {{Family::VALLANDER_THETA, 1, 0},  {Family::GANIKHODJAEV_LAMBDA, 0, 2},
                        {Family::VALLANDER_SPIRAL, 2, 3}, {Family::GSN_ALPHA, 4, 2},
                        {Family::GSN_BETA, 5, 2},         {Family::JJPH_THETA, 6, 7}};
  for (const auto& c : cases) {
    for (double p : {0.0, 0.25, 0.9}) {
      const CoefficientTensor t = make_s2(c.family, p);
      const oracle::Vec x = vec(rng.interior_point(3));
      const oracle::Vec expected = oracle::mix(p, oracle::s2(c.first, x), oracle::s2(c.second, x));
      EXPECT_LT(oracle::sup(expected, apply(t, SimplexPoint::validate(x)).coords()), 1e-15) << to_string(c.family);
    }
  }
}

TEST(Families, RegularAtThreeIsV0) { EXPECT_EQ(make_regular(3), make_s2(Family::V0)); }

TEST(Families, ValidationErrors) {
  EXPECT_EQ(validate_code({Family::VALLANDER_THETA, 3, std::nullopt, std::nullopt}), ErrorCode::MissingParameter);
  EXPECT_EQ(validate_code({Family::V0, 3, std::nullopt, 0.5}), ErrorCode::UnexpectedParameter);
  EXPECT_EQ(validate_code({Family::V0, 4, std::nullopt, std::nullopt}), ErrorCode::DimensionMismatch);
  EXPECT_EQ(validate_code({Family::REGULAR, 2, std::nullopt, std::nullopt}), ErrorCode::DimensionTooSmall);
  EXPECT_EQ(validate_code({Family::QUASI_STRICT, 4, std::nullopt, std::nullopt}), ErrorCode::MissingParameter);
  EXPECT_EQ(validate_code({Family::QUASI_STRICT, 4, parse_cycles("(1 2)", 4), std::nullopt}),
            ErrorCode::PermutationSizeMismatch);
  EXPECT_EQ(validate_code({Family::ALPHA_COMBINATION, 4, parse_cycles("(1 2)", 3), 1.5}), ErrorCode::WeightOutOfRange);
  EXPECT_THROW(parse_family("NOPE"), Error);
  EXPECT_EQ(parse_family("GANIKHODJAEV_LAMBDA"), Family::GANIKHODJAEV_LAMBDA);
}

TEST(Families, RegistryListsEveryConstructibleFamily) {
  const auto& reg = family_registry();
  EXPECT_EQ(reg.size(), 19u);
  for (const auto& info : reg) EXPECT_EQ(to_string(parse_family(info.name)), info.name);
}

TEST(Families, OperatorLabel) {
  const Operator op = make_operator({Family::QUASI_STRICT, 6, parse_cycles("(1 2)(3 4 5)", 5), std::nullopt});
  EXPECT_NE(op.label().find("QUASI_STRICT"), std::string::npos);
  EXPECT_EQ(op.dim(), 6);
}
