#include "bondseries/genpoly.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "test_util.hpp"

namespace bondseries {
namespace {

constexpr double kAlpha = 0.00315;
constexpr double kBeta = -0.0555;

TEST(GenPolyTest, CanonicalizeMergesDuplicateExponents) {
  const auto p = GenPoly::canonicalize({{1.0, 0.0}, {2.0, 0.0}});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.terms()[0], (Term{3.0, 0.0}));
}

TEST(GenPolyTest, CanonicalizeCancelsToZero) {
  EXPECT_TRUE(GenPoly::canonicalize({{1.0, 1.0}, {-1.0, 1.0}}).is_zero());
}

TEST(GenPolyTest, CanonicalizeKeepsCanonicalInput) {
  const auto p = GenPoly::canonicalize({{kAlpha, 0.0}, {kBeta, 1.0}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.terms()[0], (Term{kAlpha, 0.0}));
  EXPECT_EQ(p.terms()[1], (Term{kBeta, 1.0}));
}

TEST(GenPolyTest, CanonicalizeSortsAndMergesWithinTolerance) {
  const auto p = GenPoly::canonicalize({{1.0, 2.0}, {1.0, 0.5}, {1.0, 2.0 + 1e-14}, {0.0, 3.0}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.terms()[0].exponent, 0.5);
  EXPECT_EQ(p.terms()[1].coeff, 2.0);
  // Exponents 1e-9 apart stay distinct.
  EXPECT_EQ(GenPoly::canonicalize({{1.0, 1.0}, {1.0, 1.0 + 1e-9}}).size(), 2u);
}

TEST(GenPolyTest, CanonicalizeRejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(GenPoly::canonicalize({{nan, 1.0}}), std::invalid_argument);
  EXPECT_THROW(GenPoly::canonicalize({{1.0, inf}}), std::invalid_argument);
}

TEST(GenPolyTest, Add) {
  EXPECT_EQ(GenPoly({{1.0, 0.0}, {1.0, 1.0}}) + GenPoly({{-1.0, 1.0}}), GenPoly::constant(1.0));
  const GenPoly p{{0.3, 0.5}, {-2.0, 3.0}};
  EXPECT_EQ(p + GenPoly{}, p);
  // r^2 + (-alpha - beta r) is twice the second CIR price coefficient.
  const auto two_c2 = GenPoly::monomial(1.0, 2.0) + GenPoly{{-kAlpha, 0.0}, {-kBeta, 1.0}};
  EXPECT_EQ(two_c2, (GenPoly{{-kAlpha, 0.0}, {-kBeta, 1.0}, {1.0, 2.0}}));
}

TEST(GenPolyTest, Mul) {
  const auto r = GenPoly::monomial(1.0, 1.0);
  EXPECT_EQ(r * r, GenPoly::monomial(1.0, 2.0));
  const auto v = GenPoly::monomial(0.02, 3.0);
  EXPECT_EQ(v * GenPoly::constant(1.0), v);
  EXPECT_TRUE(approx_equal(GenPoly{{2.0, 1.0}, {-0.005, 0.0}} * GenPoly::constant(0.5),
                           GenPoly{{1.0, 1.0}, {-0.0025, 0.0}}, 1e-18));
  EXPECT_TRUE((v * GenPoly{}).is_zero());
}

TEST(GenPolyTest, Scale) {
  const GenPoly p{{0.3, 0.5}, {-2.0, 3.0}};
  EXPECT_EQ(scale(p, 1.0), p);
  EXPECT_TRUE(scale(p, 0.0).is_zero());
  // (r^2 - mu r) / 2 is the Dothan second price coefficient.
  const double mu = 0.005;
  EXPECT_EQ(scale(GenPoly{{1.0, 2.0}, {-mu, 1.0}}, 0.5), (GenPoly{{-0.0025, 1.0}, {0.5, 2.0}}));
  EXPECT_THROW(scale(p, std::nan("")), std::invalid_argument);
}

TEST(GenPolyTest, Derivative) {
  EXPECT_EQ(derivative(GenPoly::monomial(1.0, 2.0)), GenPoly::monomial(2.0, 1.0));
  EXPECT_TRUE(derivative(GenPoly::constant(7.0)).is_zero());
  const auto c2 = scale(GenPoly{{1.0, 2.0}, {-kAlpha, 0.0}, {-kBeta, 1.0}}, 0.5);
  EXPECT_TRUE(approx_equal(derivative(c2), GenPoly{{1.0, 1.0}, {-kBeta / 2.0, 0.0}}, 1e-18));
  EXPECT_EQ(derivative(GenPoly::monomial(3.0, 0.5)), GenPoly::monomial(1.5, -0.5));
}

TEST(GenPolyTest, Evaluate) {
  EXPECT_DOUBLE_EQ(GenPoly::monomial(-1.0, 1.0).evaluate(0.05), -0.05);
  const auto c2 = scale(GenPoly{{1.0, 2.0}, {-kAlpha, 0.0}, {-kBeta, 1.0}}, 0.5);
  EXPECT_NEAR(c2.evaluate(0.05), 0.0010625, 1e-15);
  EXPECT_DOUBLE_EQ(GenPoly::monomial(1.0, 0.5).evaluate(0.25), 0.5);
  EXPECT_EQ(GenPoly{}.evaluate(3.0), 0.0);
  // Integer powers are fine at r <= 0.
  EXPECT_DOUBLE_EQ((GenPoly{{1.0, 0.0}, {2.0, 3.0}}).evaluate(-1.0), -1.0);
}

TEST(GenPolyTest, EvaluateDomainErrors) {
  EXPECT_THROW(GenPoly::monomial(1.0, 0.5).evaluate(0.0), std::domain_error);
  EXPECT_THROW(GenPoly::monomial(1.0, -1.0).evaluate(-0.1), std::domain_error);
  EXPECT_THROW(GenPoly::monomial(1.0, -1.0).value_at_origin(), std::domain_error);
  EXPECT_EQ((GenPoly{{2.0, 0.0}, {1.0, 0.5}}).value_at_origin(), 2.0);
}

TEST(GenPolyTest, ApproxEqual) {
  const GenPoly p{{0.3, 0.5}, {-2.0, 3.0}};
  EXPECT_TRUE(approx_equal(p, p, 0.0));
  EXPECT_FALSE(approx_equal(p, p + GenPoly::constant(1e-6), 1e-9));
  EXPECT_TRUE(approx_equal(p, p + GenPoly::constant(1e-12), 1e-9));
  EXPECT_FALSE(approx_equal(p, GenPoly{{0.3, 0.5}}, 1.0));
}

TEST(GenPolyTest, TermLimit) {
  std::vector<Term> many;
  for (int i = 0; i < 400; ++i) many.push_back({1.0, i * 0.001});
  const auto p = GenPoly::canonicalize(many);
  std::vector<Term> spread;
  for (int i = 0; i < 400; ++i) spread.push_back({1.0, i * 1.0});
  const auto q = GenPoly::canonicalize(spread);
  EXPECT_THROW(p * q, TermLimitError);  // 160 000 distinct exponents
}

TEST(GenPolyTest, TextRoundTrip) {
  EXPECT_EQ(to_string(GenPoly{{kAlpha, 0.0}, {kBeta, 1.0}}), "0.00315:0, -0.0555:1");
  EXPECT_EQ(to_string(GenPoly{}), "0");
  EXPECT_EQ(parse_genpoly(" -0.0555:1 ,0.00315:0"), (GenPoly{{kAlpha, 0.0}, {kBeta, 1.0}}));
  EXPECT_TRUE(parse_genpoly("").is_zero());
  EXPECT_TRUE(parse_genpoly("0").is_zero());
  EXPECT_THROW(parse_genpoly("1:2, 3"), std::invalid_argument);
  EXPECT_THROW(parse_genpoly("x:1"), std::invalid_argument);
  EXPECT_THROW(parse_genpoly("1:2:3"), std::invalid_argument);
}

// Property checks over random instances (<= 8 terms, exponents in [-2, 4]).
class GenPolyProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  static constexpr int kTrials = 300;
  static constexpr double kTol = 1e-9;
};

TEST_F(GenPolyProperties, RingAxioms) {
  const GenPoly one = GenPoly::constant(1.0);
  for (int t = 0; t < kTrials; ++t) {
    const auto a = testing::random_genpoly(rng);
    const auto b = testing::random_genpoly(rng);
    const auto c = testing::random_genpoly(rng);
    EXPECT_TRUE(approx_equal(a + b, b + a, kTol));
    EXPECT_TRUE(approx_equal(a * b, b * a, kTol));
    EXPECT_TRUE(approx_equal((a + b) + c, a + (b + c), kTol));
    EXPECT_TRUE(approx_equal((a * b) * c, a * (b * c), kTol));
    EXPECT_TRUE(approx_equal(a * (b + c), a * b + a * c, kTol));
    EXPECT_TRUE(approx_equal(a + GenPoly{}, a, 0.0));
    EXPECT_TRUE(approx_equal(a * one, a, 0.0));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST_F(GenPolyProperties, ProductRule) {
  for (int t = 0; t < kTrials; ++t) {
    const auto a = testing::random_genpoly(rng);
    const auto b = testing::random_genpoly(rng);
    EXPECT_TRUE(approx_equal(derivative(a * b), derivative(a) * b + a * derivative(b), kTol));
  }
}

TEST_F(GenPolyProperties, EvaluateIsRingHomomorphism) {
  for (int t = 0; t < kTrials; ++t) {
    const auto a = testing::random_genpoly(rng);
    const auto b = testing::random_genpoly(rng);
    const double r = testing::uniform(rng, 0.05, 2.0);
    const double lhs = (a * b).evaluate(r);
    const double rhs = a.evaluate(r) * b.evaluate(r);
    // Relative to the size of the summands so cancellation is not penalised.
    double scale = 0.0;
    for (const auto& x : a.terms()) {
      for (const auto& y : b.terms()) scale += std::abs(x.coeff * y.coeff) * std::pow(r, x.exponent + y.exponent);
    }
    EXPECT_LE(std::abs(lhs - rhs), 1e-9 * std::max(scale, 1e-300));
    EXPECT_NEAR((a + b).evaluate(r), a.evaluate(r) + b.evaluate(r), 1e-9 * (1.0 + scale));
  }
}

TEST_F(GenPolyProperties, CanonicalizeIsIdempotent) {
  for (int t = 0; t < kTrials; ++t) {
    const auto a = testing::random_genpoly(rng);
    const auto again = GenPoly::canonicalize({a.terms().begin(), a.terms().end()});
    EXPECT_EQ(again, a);
    for (std::size_t i = 1; i < a.size(); ++i) {
      EXPECT_GE(a.terms()[i].exponent - a.terms()[i - 1].exponent, GenPoly::kMergeTolerance);
    }
    for (const auto& term : a.terms()) EXPECT_NE(term.coeff, 0.0);
  }
}

TEST_F(GenPolyProperties, TextRoundTripIsClose) {
  for (int t = 0; t < kTrials; ++t) {
    const auto a = testing::random_genpoly(rng);
    EXPECT_TRUE(approx_equal(parse_genpoly(to_string(a)), a, 1e-14));
  }
}

}  // namespace
}  // namespace bondseries
