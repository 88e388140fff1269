#pragma once

// Affine zero-coupon bond price in the CIR model
//   dr = (alpha + beta r) dt + sigma sqrt(r) dw,
//   P(tau, r) = A(tau) exp(-B(tau) r),
//   psi  = sqrt(beta^2 + 2 sigma^2),
//   D    = (psi - beta)(e^{psi tau} - 1) + 2 psi,
//   B    = 2 (e^{psi tau} - 1) / D,
//   A    = [2 psi e^{(psi - beta) tau / 2} / D]^{2 alpha / sigma^2}.

#include <cmath>
#include <stdexcept>

#include "bondseries/error.hpp"
#include "bondseries/model.hpp"

namespace bondseries {

struct CIRClosedForm {
  CIRParams params;
  double psi = 0.0;

  explicit CIRClosedForm(const CIRParams& p)
      : params(p), psi(std::sqrt(p.beta * p.beta + 2.0 * p.sigma * p.sigma)) {
    if (!(p.sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  }

  double log_price(double tau, double r) const {
    if (!(tau >= 0.0)) throw std::domain_error("tau must be nonnegative");
    if (!(r >= 0.0)) throw std::domain_error("CIR short rate must be nonnegative");
    if (tau == 0.0) return 0.0;
    const auto [alpha, beta, sigma] = params;
    double value;
    if (sigma == 0.0) {
      // Deterministic rate r(s) = (r + alpha/beta) e^{beta s} - alpha/beta.
      if (beta == 0.0) {
        value = -r * tau - 0.5 * alpha * tau * tau;
      } else {
        const double growth = std::expm1(beta * tau) / beta;
        value = -(r + alpha / beta) * growth + alpha * tau / beta;
      }
    } else {
      const double em1 = std::expm1(psi * tau);
      const double denom = (psi - beta) * em1 + 2.0 * psi;
      const double b = 2.0 * em1 / denom;
      // log(2 psi / denom) = -log1p((psi - beta) em1 / (2 psi)), accurate for small tau.
      const double log_a = (2.0 * alpha / (sigma * sigma)) *
                           (0.5 * (psi - beta) * tau - std::log1p((psi - beta) * em1 / (2.0 * psi)));
      value = log_a - b * r;
    }
    if (!std::isfinite(value)) throw NumericalError("CIR closed form produced a non-finite value");
    return value;
  }

  double price(double tau, double r) const { return std::exp(log_price(tau, r)); }

  double yield(double tau, double r) const {
    if (!(tau > 0.0)) throw std::domain_error("yield needs tau > 0");
    return -log_price(tau, r) / tau;
  }
};

inline double cir_exact_price(const CIRParams& p, double tau, double r) { return CIRClosedForm(p).price(tau, r); }
inline double cir_exact_yield(const CIRParams& p, double tau, double r) { return CIRClosedForm(p).yield(tau, r); }

}  // namespace bondseries
