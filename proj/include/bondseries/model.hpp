#pragma once

// One-factor short-rate diffusions dr = mu(r) dt + sigma(r) dw with
// time-independent coefficients. Only sigma^2 is stored since the bond
// pricing equations never use sigma alone.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bondseries/genpoly.hpp"

namespace bondseries {

struct ShortRateModel {
  std::string name;
  GenPoly drift;  ///< mu(r)
  GenPoly vol2;   ///< sigma(r)^2
};

/// dr = (alpha + beta r) dt + sigma sqrt(r) dw
struct CIRParams {
  double alpha = 0.0;
  double beta = 0.0;
  double sigma = 0.0;
};

/// dr = mu r dt + sigma r dw
struct DothanParams {
  double mu = 0.0;
  double sigma = 0.0;
};

/// Default right end of the interval on which vol2 >= 0 is sampled.
inline constexpr double kDefaultValidityBound = 1.0;

/// Samples vol2 at 1000 evenly spaced points of (0, r_check]; throws
/// std::invalid_argument at the first negative value.
inline void check_vol2_nonnegative(const GenPoly& vol2, double r_check = kDefaultValidityBound) {
  constexpr int kSamples = 1000;
  if (!(r_check > 0.0)) throw std::invalid_argument("validity bound must be positive");
  for (int i = 1; i <= kSamples; ++i) {
    const double r = r_check * i / kSamples;
    const double v = vol2.evaluate(r);
    if (v < 0.0) {
      throw std::invalid_argument("squared volatility is negative at r = " + std::to_string(r) +
                                  " (value " + std::to_string(v) + ")");
    }
  }
}

namespace detail {
inline void require_nonnegative_sigma(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
}
}  // namespace detail

inline ShortRateModel make_ckls(double alpha, double beta, double sigma, double gamma) {
  detail::require_nonnegative_sigma(sigma);
  return {"ckls", GenPoly{{alpha, 0.0}, {beta, 1.0}}, GenPoly::monomial(sigma * sigma, 2.0 * gamma)};
}

inline ShortRateModel make_cir(const CIRParams& p) {
  detail::require_nonnegative_sigma(p.sigma);
  return {"cir", GenPoly{{p.alpha, 0.0}, {p.beta, 1.0}}, GenPoly::monomial(p.sigma * p.sigma, 1.0)};
}

inline ShortRateModel make_dothan(const DothanParams& p) {
  detail::require_nonnegative_sigma(p.sigma);
  return {"dothan", GenPoly::monomial(p.mu, 1.0), GenPoly::monomial(p.sigma * p.sigma, 2.0)};
}

inline ShortRateModel make_custom(std::vector<Term> drift_terms, std::vector<Term> vol2_terms,
                                  double r_check = kDefaultValidityBound) {
  ShortRateModel m{"custom", GenPoly::canonicalize(std::move(drift_terms)),
                   GenPoly::canonicalize(std::move(vol2_terms))};
  check_vol2_nonnegative(m.vol2, r_check);
  return m;
}

}  // namespace bondseries
