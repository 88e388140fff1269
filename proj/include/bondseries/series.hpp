#pragma once

// Taylor expansions in time to maturity tau around tau = 0 of the bond price
// P(tau, r) and of its logarithm f = ln P. With P = sum_k c_k(r) tau^k
// substituted into
//
//   -P_tau + mu(r) P_r + 1/2 sigma^2(r) P_rr - r P = 0,   P(0, r) = 1,
//
// matching powers of tau gives
//
//   c_{k+1} = [mu c_k' + 1/2 sigma^2 c_k'' - r c_k] / (k + 1),   c_0 = 1.
//
// For f the equation gains the quadratic term 1/2 sigma^2 (f_r)^2 and loses
// the -r f term (it becomes a constant -r), so
//
//   c_{k+1} = [mu c_k' + 1/2 sigma^2 (sum_{i=0..k} c_i' c_{k-i}' + c_k'')] / (k + 1),
//
// with c_0 = 0 and the constant -r contributing only to c_1 = -r.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bondseries/genpoly.hpp"
#include "bondseries/model.hpp"

namespace bondseries {

enum class SeriesTarget { price, logprice };

inline const char* to_string(SeriesTarget t) { return t == SeriesTarget::price ? "price" : "logprice"; }

struct TaylorSeries {
  SeriesTarget target = SeriesTarget::price;
  int order = 0;                ///< truncation order J
  std::vector<GenPoly> coeffs;  ///< J + 1 entries, coeffs[k] = c_k(r)
  ShortRateModel model;
};

inline constexpr int kDefaultOrder = 8;
inline constexpr int kMaxOrder = 30;

namespace detail {

inline void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw std::invalid_argument("truncation order " + std::to_string(order) + " outside [0, " +
                                std::to_string(kMaxOrder) + "]");
  }
}

template <typename Step>
GenPoly guarded_step(int next_order, Step&& step) {
  try {
    return step();
  } catch (const TermLimitError& e) {
    throw TermLimitError("coefficient c_" + std::to_string(next_order) + ": " + e.what());
  }
}

// mu c' + 1/2 sigma^2 c'' - r c, the spatial part of the price equation.
inline GenPoly price_operator(const ShortRateModel& m, const GenPoly& c) {
  static const GenPoly minus_r = GenPoly::monomial(-1.0, 1.0);
  const GenPoly d1 = c.derivative();
  return m.drift * d1 + m.vol2 * d1.derivative() * 0.5 + minus_r * c;
}

}  // namespace detail

inline TaylorSeries price_coeffs(const ShortRateModel& m, int order) {
  detail::check_order(order);
  TaylorSeries s{SeriesTarget::price, order, {}, m};
  s.coeffs.reserve(order + 1);
  s.coeffs.push_back(GenPoly::constant(1.0));
  for (int k = 0; k < order; ++k) {
    s.coeffs.push_back(detail::guarded_step(k + 1, [&] {
      return detail::price_operator(m, s.coeffs[k]) * (1.0 / (k + 1));
    }));
  }
  return s;
}

inline TaylorSeries log_coeffs(const ShortRateModel& m, int order) {
  detail::check_order(order);
  TaylorSeries s{SeriesTarget::logprice, order, {}, m};
  s.coeffs.reserve(order + 1);
  s.coeffs.emplace_back();
  std::vector<GenPoly> d1{GenPoly{}};  // c_i'
  for (int k = 0; k < order; ++k) {
    s.coeffs.push_back(detail::guarded_step(k + 1, [&] {
      GenPoly conv;
      for (int i = 0; i <= k; ++i) conv += d1[i] * d1[k - i];
      GenPoly rhs = m.drift * d1[k] + m.vol2 * (conv + d1[k].derivative()) * 0.5;
      if (k == 0) rhs += GenPoly::monomial(-1.0, 1.0);
      return rhs * (1.0 / (k + 1));
    }));
    d1.push_back(s.coeffs.back().derivative());
  }
  return s;
}

/// sum_{k=0..J} c_k(r) tau^k
inline double eval_partial_sum(const TaylorSeries& s, double tau, double r) {
  if (!(tau >= 0.0)) throw std::domain_error("tau must be nonnegative");
  double sum = 0.0;
  for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) sum = sum * tau + it->evaluate(r);
  return sum;
}

/// Partial sums for every order 0..J at one point.
inline std::vector<double> partial_sums(const TaylorSeries& s, double tau, double r) {
  if (!(tau >= 0.0)) throw std::domain_error("tau must be nonnegative");
  std::vector<double> out;
  out.reserve(s.coeffs.size());
  double sum = 0.0, power = 1.0;
  for (const auto& c : s.coeffs) {
    sum += c.evaluate(r) * power;
    power *= tau;
    out.push_back(sum);
  }
  return out;
}

/// R = -ln(P) / tau
inline double yield_from_price(double price, double tau) {
  if (!(price > 0.0)) throw std::domain_error("bond price must be positive to define a yield");
  if (!(tau > 0.0)) throw std::domain_error("yield needs tau > 0");
  return -std::log(price) / tau;
}

/// Yield from a log-price value: R = -f / tau.
inline double yield_from_logprice(double logprice, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("yield needs tau > 0");
  return -logprice / tau;
}

struct YieldPoint {
  double tau = 0.0;
  double yield = 0.0;  ///< continuously compounded, as a fraction
};

/// Term structure from the order-J log-price series at short rate r.
inline std::vector<YieldPoint> yield_curve(const ShortRateModel& m, int order, double r,
                                           const std::vector<double>& taus) {
  const TaylorSeries f = log_coeffs(m, order);
  std::vector<YieldPoint> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    if (!(tau > 0.0)) throw std::domain_error("yield curve maturities must be positive");
    out.push_back({tau, yield_from_logprice(eval_partial_sum(f, tau, r), tau)});
  }
  return out;
}

/// exp of a log-price series as a formal power series in tau:
///   b_0 = 1,  b_n = (1/n) sum_{k=1..n} k c_k b_{n-k}.
inline TaylorSeries exp_compose(const TaylorSeries& logs) {
  if (logs.target != SeriesTarget::logprice) throw std::invalid_argument("exp_compose needs a logprice series");
  if (!logs.coeffs.empty() && !logs.coeffs[0].is_zero()) {
    throw std::invalid_argument("exp_compose needs c_0 = 0");
  }
  TaylorSeries out{SeriesTarget::price, logs.order, {}, logs.model};
  out.coeffs.reserve(logs.coeffs.size());
  out.coeffs.push_back(GenPoly::constant(1.0));
  for (int n = 1; n <= logs.order; ++n) {
    out.coeffs.push_back(detail::guarded_step(n, [&] {
      GenPoly acc;
      for (int k = 1; k <= n; ++k) acc += logs.coeffs[k] * out.coeffs[n - k] * static_cast<double>(k);
      return acc * (1.0 / n);
    }));
  }
  return out;
}

/// tau-coefficients of -S_tau + mu S_r + 1/2 sigma^2 S_rr - r S for the
/// truncated price series S. Entries 0..J-1 vanish when the recursion holds;
/// entry J is the leading truncation error.
inline std::vector<GenPoly> pde_residual_coeffs(const TaylorSeries& s) {
  if (s.target != SeriesTarget::price) throw std::invalid_argument("pde_residual_coeffs needs a price series");
  std::vector<GenPoly> out;
  out.reserve(s.coeffs.size());
  for (int j = 0; j <= s.order; ++j) {
    GenPoly res = detail::price_operator(s.model, s.coeffs[j]);
    if (j < s.order) res += s.coeffs[j + 1] * -static_cast<double>(j + 1);
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace bondseries
