#pragma once

// Theta-scheme finite differences for the bond equation in time to maturity
//
//   P_tau = mu(r) P_r + 1/2 sigma^2(r) P_rr - r P,   P(0, r) = 1,
//
// on a uniform grid r_j = j h, j = 0..n_r, h = r_max / n_r. Interior nodes use
// central differences. At r = 0 the equation is taken in its degenerate
// limit: sigma^2(0) P_rr is dropped and P_r is a forward difference, so the
// node decouples when mu(0) = 0. At r = r_max, P_rr = 0 and P_r is a backward
// difference. Each step solves one tridiagonal system with the Thomas
// algorithm; the system matrix is constant, so it is factored once.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bondseries/error.hpp"
#include "bondseries/model.hpp"

namespace bondseries {

struct FDGrid {
  double r_max = 0.5;
  int n_r = 2000;     ///< number of space intervals
  int n_t = 1000;     ///< number of time steps to tau_final
  double theta = 0.5; ///< 0.5 = Crank-Nicolson, 1 = implicit Euler

  void validate() const {
    if (!(r_max > 0.0)) throw std::invalid_argument("FDGrid: r_max must be positive");
    if (n_r < 3) throw std::invalid_argument("FDGrid: n_r must be at least 3");
    if (n_t < 1) throw std::invalid_argument("FDGrid: n_t must be at least 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("FDGrid: theta must lie in [0, 1]");
  }

  double spacing() const { return r_max / n_r; }
};

/// r_max = max(10 r, 0.5), n_r = 2000, n_t = 1000 tau (at least 1, at most 20000), theta = 0.5.
inline FDGrid default_grid(double r_query, double tau_final) {
  FDGrid g;
  g.r_max = std::max(10.0 * r_query, 0.5);
  g.n_r = 2000;
  g.n_t = static_cast<int>(std::clamp(std::ceil(1000.0 * tau_final), 1.0, 20000.0));
  g.theta = 0.5;
  return g;
}

struct FDSolution {
  FDGrid grid;
  double tau_final = 0.0;
  std::vector<double> values;  ///< P(tau_final, r_j), j = 0..n_r

  double node(int j) const { return j * grid.spacing(); }
};

namespace detail {

// Rows of the spatial operator L: (L P)_j = lower_j P_{j-1} + diag_j P_j + upper_j P_{j+1}.
struct TridiagonalOperator {
  std::vector<double> lower, diag, upper;
};

inline TridiagonalOperator build_operator(const ShortRateModel& m, const FDGrid& g) {
  const int n = g.n_r;
  const double h = g.spacing();
  TridiagonalOperator op{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0),
                         std::vector<double>(n + 1, 0.0)};
  const double mu0 = m.drift.value_at_origin();
  op.diag[0] = -mu0 / h;
  op.upper[0] = mu0 / h;
  for (int j = 1; j < n; ++j) {
    const double r = j * h;
    const double mu = m.drift.evaluate(r);
    const double v = m.vol2.evaluate(r);
    const double diffusion = 0.5 * v / (h * h);
    const double advection = 0.5 * mu / h;
    op.lower[j] = diffusion - advection;
    op.diag[j] = -2.0 * diffusion - r;
    op.upper[j] = diffusion + advection;
  }
  const double r_max = n * h;
  const double mu_n = m.drift.evaluate(r_max);
  op.lower[n] = -mu_n / h;
  op.diag[n] = mu_n / h - r_max;
  return op;
}

}  // namespace detail

inline FDSolution fd_solve(const ShortRateModel& m, double tau_final, const FDGrid& grid) {
  grid.validate();
  if (!(tau_final >= 0.0)) throw std::invalid_argument("fd_solve: tau_final must be nonnegative");
  const int n = grid.n_r;
  const auto op = detail::build_operator(m, grid);
  const double dt = tau_final / grid.n_t;
  const double implicit = grid.theta * dt;
  const double explicit_ = (1.0 - grid.theta) * dt;

  // Forward elimination of (I - theta dt L), done once.
  std::vector<double> pivot(n + 1), ratio(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double d = 1.0 - implicit * op.diag[j];
    const double lower = -implicit * op.lower[j];
    pivot[j] = j == 0 ? d : d - lower * ratio[j - 1];
    if (!(std::abs(pivot[j]) > 1e-300)) {
      throw NumericalError("fd_solve: zero pivot at node " + std::to_string(j));
    }
    ratio[j] = -implicit * op.upper[j] / pivot[j];
  }

  std::vector<double> p(n + 1, 1.0), rhs(n + 1);
  for (int step = 1; step <= grid.n_t; ++step) {
    for (int j = 0; j <= n; ++j) {
      double lp = op.diag[j] * p[j];
      if (j > 0) lp += op.lower[j] * p[j - 1];
      if (j < n) lp += op.upper[j] * p[j + 1];
      rhs[j] = p[j] + explicit_ * lp;
    }
    // Forward sweep then back substitution.
    rhs[0] /= pivot[0];
    for (int j = 1; j <= n; ++j) rhs[j] = (rhs[j] + implicit * op.lower[j] * rhs[j - 1]) / pivot[j];
    p[n] = rhs[n];
    for (int j = n - 1; j >= 0; --j) p[j] = rhs[j] - ratio[j] * p[j + 1];
    for (int j = 0; j <= n; ++j) {
      if (!std::isfinite(p[j])) {
        throw NumericalError("fd_solve: non-finite value at step " + std::to_string(step) + ", node " +
                             std::to_string(j));
      }
    }
  }
  return {grid, tau_final, std::move(p)};
}

/// Linear interpolation of the solution profile at r in [0, r_max].
inline double fd_price_at(const FDSolution& sol, double r) {
  const double h = sol.grid.spacing();
  if (!(r >= 0.0 && r <= sol.grid.r_max)) {
    throw std::domain_error("fd_price_at: r = " + std::to_string(r) + " outside [0, " +
                            std::to_string(sol.grid.r_max) + "]");
  }
  const double x = r / h;
  // Snap to a node when r is one up to rounding.
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) return sol.values[static_cast<std::size_t>(nearest)];
  const auto j = std::min(static_cast<std::size_t>(x), sol.values.size() - 2);
  const double w = x - static_cast<double>(j);
  return (1.0 - w) * sol.values[j] + w * sol.values[j + 1];
}

struct ConvergenceLevel {
  double h = 0.0;
  double dt = 0.0;
  double value = 0.0;
  double delta = NAN;           ///< |value - previous level value|
  double delta_order = NAN;     ///< log2(delta_{k-1} / delta_k)
  double error = 0.0;           ///< |value - reference|
  double error_order = NAN;     ///< log2(error_{k-1} / error_k)
};

/// Refines `base` `levels - 1` times, halving h and dt each time. Errors are
/// measured against `reference` when given, otherwise against the Richardson
/// extrapolation of the two finest levels using the scheme's formal order
/// (2 for theta = 0.5, 1 otherwise).
inline std::vector<ConvergenceLevel> convergence_study(const ShortRateModel& m, double tau, double r,
                                                       const FDGrid& base, int levels,
                                                       std::optional<double> reference = std::nullopt) {
  if (levels < 2) throw std::invalid_argument("convergence_study: need at least 2 levels");
  std::vector<ConvergenceLevel> out;
  FDGrid g = base;
  for (int k = 0; k < levels; ++k) {
    ConvergenceLevel lv;
    lv.h = g.spacing();
    lv.dt = tau / g.n_t;
    lv.value = fd_price_at(fd_solve(m, tau, g), r);
    if (k > 0) {
      lv.delta = std::abs(lv.value - out.back().value);
      if (k > 1) lv.delta_order = std::log2(out.back().delta / lv.delta);
    }
    out.push_back(lv);
    g.n_r *= 2;
    g.n_t *= 2;
  }
  double ref;
  if (reference) {
    ref = *reference;
  } else {
    const double order = base.theta == 0.5 ? 2.0 : 1.0;
    const double fine = out[levels - 1].value, coarse = out[levels - 2].value;
    ref = fine + (fine - coarse) / (std::pow(2.0, order) - 1.0);
  }
  for (int k = 0; k < levels; ++k) {
    out[k].error = std::abs(out[k].value - ref);
    if (k > 0) out[k].error_order = std::log2(out[k - 1].error / out[k].error);
  }
  return out;
}

}  // namespace bondseries
