#pragma once

// Line-based model configuration:
//
//   # comment
//   model = cir            (cir | dothan | ckls | custom)
//   alpha = 0.00315
//   ...
//
// Several assignments may share a line when separated by commas, e.g.
// `model = dothan, mu = 0.005, sigma2 = 0.02`.

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bondseries/error.hpp"
#include "bondseries/genpoly.hpp"
#include "bondseries/model.hpp"

namespace bondseries {

namespace detail {

struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

// Splits "a = 1, b = x:1, y:2" into assignments; pieces without '=' continue
// the previous value (term lists contain commas).
inline std::vector<std::string> split_assignments(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    const auto comma = line.find(',', start);
    const auto piece = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (piece.find('=') != std::string_view::npos || out.empty()) {
      out.emplace_back(piece);
    } else {
      out.back() += ',';
      out.back() += piece;
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double config_number(const std::map<std::string, ConfigEntry>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("missing required key '" + key + "'");
  try {
    return parse_number(it->second.value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("key '" + key + "': " + e.what(), it->second.line);
  }
}

inline GenPoly config_terms(const std::map<std::string, ConfigEntry>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("missing required key '" + key + "'");
  try {
    return parse_genpoly(it->second.value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("key '" + key + "': " + e.what(), it->second.line);
  }
}

}  // namespace detail

inline ShortRateModel parse_model_config(std::string_view text) {
  std::map<std::string, detail::ConfigEntry> kv;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (detail::trim(line).empty()) continue;
    for (const auto& assignment : detail::split_assignments(line)) {
      const auto eq = assignment.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + std::string(detail::trim(assignment)) + "'", line_no);
      const std::string key(detail::trim(std::string_view(assignment).substr(0, eq)));
      const std::string value(detail::trim(std::string_view(assignment).substr(eq + 1)));
      if (key.empty()) throw ConfigError("empty key", line_no);
      if (!kv.emplace(key, detail::ConfigEntry{value, line_no}).second) {
        throw ConfigError("duplicate key '" + key + "'", line_no);
      }
    }
  }

  const auto model_it = kv.find("model");
  if (model_it == kv.end()) throw ConfigError("missing required key 'model'");
  const std::string kind = model_it->second.value;

  static const std::map<std::string, std::set<std::string>> kAllowed = {
      {"cir", {"alpha", "beta", "sigma"}},
      {"dothan", {"mu", "sigma2"}},
      {"ckls", {"alpha", "beta", "sigma", "gamma"}},
      {"custom", {"drift_terms", "vol2_terms"}},
  };
  const auto allowed = kAllowed.find(kind);
  if (allowed == kAllowed.end()) {
    throw ConfigError("unknown model '" + kind + "' (expected cir, dothan, ckls or custom)", model_it->second.line);
  }
  for (const auto& [key, entry] : kv) {
    if (key != "model" && key != "r_check" && !allowed->second.contains(key)) {
      throw ConfigError("unknown key '" + key + "' for model " + kind, entry.line);
    }
  }

  const double r_check = kv.contains("r_check") ? detail::config_number(kv, "r_check") : kDefaultValidityBound;
  try {
    ShortRateModel m;
    if (kind == "cir") {
      m = make_cir({detail::config_number(kv, "alpha"), detail::config_number(kv, "beta"),
                    detail::config_number(kv, "sigma")});
    } else if (kind == "dothan") {
      const double sigma2 = detail::config_number(kv, "sigma2");
      if (sigma2 < 0.0) throw ConfigError("sigma2 must be nonnegative", kv.at("sigma2").line);
      m = make_dothan({detail::config_number(kv, "mu"), std::sqrt(sigma2)});
    } else if (kind == "ckls") {
      m = make_ckls(detail::config_number(kv, "alpha"), detail::config_number(kv, "beta"),
                    detail::config_number(kv, "sigma"), detail::config_number(kv, "gamma"));
    } else {
      const GenPoly drift = detail::config_terms(kv, "drift_terms");
      const GenPoly vol2 = detail::config_terms(kv, "vol2_terms");
      m = make_custom({drift.terms().begin(), drift.terms().end()}, {vol2.terms().begin(), vol2.terms().end()},
                      r_check);
      return m;
    }
    check_vol2_nonnegative(m.vol2, r_check);
    return m;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline ShortRateModel load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_config(buf.str());
}

}  // namespace bondseries
