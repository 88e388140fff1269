#include "bondseries/closed_form.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "bondseries/fd_solver.hpp"
#include "bondseries/series.hpp"

namespace bondseries {
namespace {

constexpr CIRParams kCir{0.00315, -0.0555, 0.0894};

TEST(CIRClosedFormTest, ReproducesPublishedExactPrices) {
  constexpr std::array<std::array<double, 2>, 10> kCells{{{0.25, 0.987567},
                                                          {0.5, 0.975273},
                                                          {0.75, 0.963120},
                                                          {1.0, 0.951115},
                                                          {1.5, 0.927559},
                                                          {2.0, 0.904626},
                                                          {2.5, 0.882334},
                                                          {3.0, 0.860691},
                                                          {4.0, 0.819367},
                                                          {5.0, 0.780631}}};
  for (const auto& [tau, price] : kCells) EXPECT_NEAR(cir_exact_price(kCir, tau, 0.05), price, 5e-7) << tau;
}

TEST(CIRClosedFormTest, Yields) {
  EXPECT_NEAR(100.0 * cir_exact_yield(kCir, 1.0, 0.05), 5.01202, 5e-6);
  EXPECT_NEAR(100.0 * cir_exact_yield(kCir, 0.25, 0.05), 5.00425, 5e-6);
  EXPECT_NEAR(cir_exact_yield(kCir, 2.0, 0.05), yield_from_price(cir_exact_price(kCir, 2.0, 0.05), 2.0), 1e-15);
  EXPECT_THROW(cir_exact_yield(kCir, 0.0, 0.05), std::domain_error);
}

TEST(CIRClosedFormTest, InitialCondition) {
  for (double r : {0.0, 0.05, 0.3}) EXPECT_EQ(cir_exact_price(kCir, 0.0, r), 1.0);
  EXPECT_THROW(cir_exact_price(kCir, -1.0, 0.05), std::domain_error);
  EXPECT_THROW(cir_exact_price(kCir, 1.0, -0.05), std::domain_error);
}

TEST(CIRClosedFormTest, PsiBound) {
  const CIRClosedForm cf(kCir);
  EXPECT_GE(cf.psi, std::abs(kCir.beta));
  EXPECT_DOUBLE_EQ(cf.psi * cf.psi, kCir.beta * kCir.beta + 2.0 * kCir.sigma * kCir.sigma);
}

TEST(CIRClosedFormTest, ZeroDriftAgreesWithFiniteDifferences) {
  const CIRParams p{0.0, 0.0, 0.0894};
  const double tau = 1.0, r = 0.05;
  const auto sol = fd_solve(make_cir(p), tau, default_grid(r, tau));
  EXPECT_NEAR(fd_price_at(sol, r), cir_exact_price(p, tau, r), 1e-5);
}

TEST(CIRClosedFormTest, DeterministicLimit) {
  // beta = 0: exp(-r tau - alpha tau^2 / 2).
  const CIRParams flat{0.002, 0.0, 0.0};
  EXPECT_NEAR(cir_exact_price(flat, 2.0, 0.05), std::exp(-0.05 * 2.0 - 0.5 * 0.002 * 4.0), 1e-15);
  // beta != 0 branch is the sigma -> 0 limit of the stochastic formula.
  const CIRParams det{0.00315, -0.0555, 0.0};
  const CIRParams tiny{0.00315, -0.0555, 1e-4};
  for (double tau : {0.5, 3.0, 10.0}) {
    EXPECT_NEAR(cir_exact_price(det, tau, 0.05), cir_exact_price(tiny, tau, 0.05), 1e-7) << tau;
  }
  // ... and agrees with the zero-volatility price series where it converges fast.
  const auto s = price_coeffs(make_cir(det), 20);
  EXPECT_NEAR(cir_exact_price(det, 1.0, 0.05), eval_partial_sum(s, 1.0, 0.05), 1e-14);
}

TEST(CIRClosedFormTest, MonotoneInRateAndMaturity) {
  const CIRClosedForm cf(kCir);
  for (double tau = 0.25; tau <= 5.0; tau += 0.25) {
    double prev = 2.0;
    for (double r = 0.01; r <= 0.2 + 1e-12; r += 0.01) {
      const double p = cf.price(tau, r);
      EXPECT_LT(p, prev);
      EXPECT_GT(p, 0.0);
      EXPECT_LT(p, cf.price(tau - 0.125, r));
      prev = p;
    }
  }
}

// |ln P_J - ln P| / tau^{J+1} stays bounded as tau -> 0 and tends to the
// magnitude of the first omitted log coefficient.
TEST(CIRClosedFormTest, TaylorAgreementOrder) {
  const double r = 0.05;
  const CIRClosedForm cf(kCir);
  for (int order : {2, 3}) {
    const auto f = log_coeffs(make_cir(kCir), order + 1);
    const double leading = std::abs(f.coeffs[order + 1].evaluate(r));
    auto truncated = f;
    truncated.coeffs.pop_back();
    truncated.order = order;
    double last = 0.0;
    for (int k = 3; k <= 10; ++k) {
      const double tau = std::ldexp(1.0, -k);
      const double ratio = std::abs(eval_partial_sum(truncated, tau, r) - cf.log_price(tau, r)) / std::pow(tau, order + 1);
      EXPECT_LT(ratio, 2.0 * leading) << "order " << order << " tau " << tau;
      last = ratio;
    }
    EXPECT_NEAR(last, leading, 0.05 * leading) << "order " << order;
  }
}

}  // namespace
}  // namespace bondseries
