#pragma once

// Sparse polynomials in one variable r with real exponents:
//   p(r) = sum_i c_i * r^{e_i}
// Terms are kept sorted by exponent with near-equal exponents merged, so
// two values with the same terms compare equal.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bondseries/error.hpp"

namespace bondseries {

struct Term {
  double coeff = 0.0;
  double exponent = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

class GenPoly {
 public:
  /// Exponents closer than this are treated as the same power of r.
  static constexpr double kMergeTolerance = 1e-12;
  /// Upper bound on the number of terms any operation may produce.
  static constexpr std::size_t kMaxTerms = 100000;

  GenPoly() = default;
  GenPoly(std::initializer_list<Term> raw) : GenPoly(canonicalize(std::vector<Term>(raw))) {}

  /// Sorts by exponent, merges exponents within kMergeTolerance and drops
  /// zero coefficients. Throws std::invalid_argument on non-finite input.
  static GenPoly canonicalize(std::vector<Term> raw) {
    for (const auto& t : raw) {
      if (!std::isfinite(t.coeff) || !std::isfinite(t.exponent)) {
        throw std::invalid_argument("GenPoly: non-finite coefficient or exponent");
      }
    }
    std::stable_sort(raw.begin(), raw.end(),
                     [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    GenPoly out;
    out.terms_.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
      Term group = raw[i++];
      while (i < raw.size() && raw[i].exponent - group.exponent < kMergeTolerance) {
        group.coeff += raw[i++].coeff;
      }
      if (group.coeff != 0.0) out.terms_.push_back(group);
    }
    out.check_size();
    return out;
  }

  static GenPoly constant(double c) { return monomial(c, 0.0); }
  static GenPoly monomial(double c, double exponent) { return canonicalize({{c, exponent}}); }

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// True when some exponent is negative or non-integer, i.e. r must be > 0.
  bool needs_positive_argument() const noexcept {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) {
      return t.exponent < 0.0 || t.exponent != std::floor(t.exponent);
    });
  }

  double evaluate(double r) const {
    if (r <= 0.0 && needs_positive_argument()) {
      throw std::domain_error("GenPoly::evaluate: r = " + std::to_string(r) +
                              " outside domain of a negative or fractional power");
    }
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.coeff * std::pow(r, t.exponent);
    return sum;
  }

  /// Limit of p(r) as r -> 0+. Throws std::domain_error if it diverges.
  double value_at_origin() const {
    double sum = 0.0;
    for (const auto& t : terms_) {
      if (t.exponent < 0.0) throw std::domain_error("GenPoly: negative power is singular at r = 0");
      if (t.exponent == 0.0) sum += t.coeff;
    }
    return sum;
  }

  GenPoly derivative() const {
    GenPoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (t.exponent == 0.0) continue;
      // Exponents stay sorted and separated, so only zero products need care.
      const double c = t.coeff * t.exponent;
      if (c != 0.0) out.terms_.push_back({c, t.exponent - 1.0});
    }
    return out;
  }

  friend GenPoly operator+(const GenPoly& a, const GenPoly& b) {
    std::vector<Term> raw;
    raw.reserve(a.size() + b.size());
    raw.insert(raw.end(), a.terms_.begin(), a.terms_.end());
    raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
    return canonicalize(std::move(raw));
  }

  friend GenPoly operator*(const GenPoly& a, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("GenPoly: non-finite scale factor");
    GenPoly out;
    if (s == 0.0) return out;
    out.terms_.reserve(a.size());
    for (const auto& t : a.terms_) {
      const double c = t.coeff * s;
      if (c != 0.0) out.terms_.push_back({c, t.exponent});
    }
    return out;
  }
  friend GenPoly operator*(double s, const GenPoly& a) { return a * s; }

  friend GenPoly operator*(const GenPoly& a, const GenPoly& b) {
    if (a.size() * b.size() > kMaxTerms * 500) {
      throw TermLimitError("GenPoly: product of " + std::to_string(a.size()) + " x " +
                           std::to_string(b.size()) + " terms exceeds the term limit");
    }
    std::vector<Term> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) raw.push_back({x.coeff * y.coeff, x.exponent + y.exponent});
    }
    return canonicalize(std::move(raw));
  }

  friend GenPoly operator-(const GenPoly& a) { return a * -1.0; }
  friend GenPoly operator-(const GenPoly& a, const GenPoly& b) { return a + (-b); }

  GenPoly& operator+=(const GenPoly& o) { return *this = *this + o; }
  GenPoly& operator*=(const GenPoly& o) { return *this = *this * o; }
  GenPoly& operator*=(double s) { return *this = *this * s; }

  friend bool operator==(const GenPoly&, const GenPoly&) = default;

 private:
  void check_size() const {
    if (terms_.size() > kMaxTerms) {
      throw TermLimitError("GenPoly: " + std::to_string(terms_.size()) + " terms exceeds limit of " +
                           std::to_string(kMaxTerms));
    }
  }

  std::vector<Term> terms_;
};

inline GenPoly add(const GenPoly& a, const GenPoly& b) { return a + b; }
inline GenPoly mul(const GenPoly& a, const GenPoly& b) { return a * b; }
inline GenPoly scale(const GenPoly& a, double s) { return a * s; }
inline GenPoly derivative(const GenPoly& a) { return a.derivative(); }
inline double evaluate(const GenPoly& a, double r) { return a.evaluate(r); }

/// Coefficient-wise comparison. A term missing from one side counts as a
/// zero coefficient there.
inline bool approx_equal(const GenPoly& a, const GenPoly& b, double tol) {
  auto x = a.terms();
  auto y = b.terms();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    double diff;
    if (j == y.size() || (i < x.size() && x[i].exponent < y[j].exponent - GenPoly::kMergeTolerance)) {
      diff = x[i++].coeff;
    } else if (i == x.size() || y[j].exponent < x[i].exponent - GenPoly::kMergeTolerance) {
      diff = y[j++].coeff;
    } else {
      diff = x[i++].coeff - y[j++].coeff;
    }
    if (!(std::abs(diff) <= tol)) return false;
  }
  return true;
}

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline double parse_number(std::string_view s) {
  s = trim(s);
  std::string buf(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (buf.empty() || used != buf.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a finite number: '" + buf + "'");
  }
  return v;
}

}  // namespace detail

/// Renders as `c1:p1, c2:p2, ...` in ascending exponent order; zero is `0`.
inline std::string to_string(const GenPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    if (!out.empty()) out += ", ";
    out += detail::format_number(t.coeff);
    out += ':';
    out += detail::format_number(t.exponent);
  }
  return out;
}

/// Inverse of to_string. Accepts any term order; `0` or blank is the zero
/// polynomial. Throws std::invalid_argument on malformed input.
inline GenPoly parse_genpoly(std::string_view text) {
  text = detail::trim(text);
  if (text.empty() || text == "0") return {};
  std::vector<Term> raw;
  while (true) {
    const auto comma = text.find(',');
    const auto item = detail::trim(text.substr(0, comma));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("term '" + std::string(item) + "' is not of the form coeff:exponent");
    }
    raw.push_back({detail::parse_number(item.substr(0, colon)), detail::parse_number(item.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return GenPoly::canonicalize(std::move(raw));
}

}  // namespace bondseries
