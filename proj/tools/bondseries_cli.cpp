// bondseries: Taylor-series bond prices for one-factor short-rate models.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical or
// domain error, 3 table reproduction mismatch.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bondseries/bondseries.hpp"

namespace {

using namespace bondseries;

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kMismatch = 3 };

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  // Avoid "-0.000000".
  if (std::string_view(buf).find_first_not_of("-0.") == std::string_view::npos && buf[0] == '-') {
    return buf + 1;
  }
  return buf;
}

// Header plus rows, printed either as CSV or as aligned text columns.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out, bool csv) const {
    if (csv) {
      write_csv_row(out, header_);
      for (const auto& r : rows_) write_csv_row(out, r);
      return;
    }
    std::vector<std::size_t> width(header_.size());
    for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    // Numeric columns are right-aligned, text columns left-aligned.
    std::vector<bool> numeric(header_.size(), true);
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (!r[i].empty() && r[i].find_first_not_of("0123456789.-+e") != std::string::npos) numeric[i] = false;
      }
    }
    auto line = [&](const std::vector<std::string>& r) {
      std::string text;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::string pad(width[i] - r[i].size(), ' ');
        text += (i ? "  " : "") + (numeric[i] ? pad + r[i] : r[i] + pad);
      }
      out << text.substr(0, text.find_last_not_of(' ') + 1) << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  static void write_csv_row(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      if (r[i].find_first_of(",\"") != std::string::npos) {
        out << '"';
        for (char c : r[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
        out << '"';
      } else {
        out << r[i];
      }
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct CommonOptions {
  std::string model_path;
  int order = kDefaultOrder;
  std::string format = "text";
  std::string out_path;

  bool csv() const { return format == "csv"; }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_model, bool has_order) {
  if (needs_model) cmd->add_option("--model", opt.model_path, "Model config file")->required()->check(CLI::ExistingFile);
  if (has_order) cmd->add_option("--order", opt.order, "Truncation order J")->capture_default_str()->check(CLI::Range(0, kMaxOrder));
  cmd->add_option("--format", opt.format, "Output format")->capture_default_str()->check(CLI::IsMember({"csv", "text"}));
  cmd->add_option("--out", opt.out_path, "Write output to this file instead of stdout");
}

SeriesTarget parse_target(const std::string& s) { return s == "logprice" ? SeriesTarget::logprice : SeriesTarget::price; }

int run_coeffs(const CommonOptions& opt, const std::string& target) {
  const auto m = load_model_config(opt.model_path);
  const auto s = parse_target(target) == SeriesTarget::price ? price_coeffs(m, opt.order) : log_coeffs(m, opt.order);
  Output out(opt.out_path);
  if (opt.csv()) {
    Table t({"k", "coeff", "exponent"});
    for (int k = 0; k <= s.order; ++k) {
      for (const auto& term : s.coeffs[k].terms()) {
        t.add({std::to_string(k), detail::format_number(term.coeff), detail::format_number(term.exponent)});
      }
    }
    t.write(out.stream(), true);
  } else {
    for (int k = 0; k <= s.order; ++k) out.stream() << "c[" << k << "] = " << to_string(s.coeffs[k]) << '\n';
  }
  return kOk;
}

struct PriceOptions {
  std::string target = "price";
  double r = 0.0;
  std::vector<double> taus;
  bool converge = false;
};

int run_price(const CommonOptions& opt, const PriceOptions& p) {
  const auto m = load_model_config(opt.model_path);
  const auto target = parse_target(p.target);
  const auto s = target == SeriesTarget::price ? price_coeffs(m, opt.order) : log_coeffs(m, opt.order);
  Output out(opt.out_path);
  if (p.converge) {
    // One row per (tau, J) with the change from the previous order as an error proxy.
    Table t({"tau", "J", p.target, "delta"});
    for (double tau : p.taus) {
      const auto sums = partial_sums(s, tau, p.r);
      for (int j = 0; j <= s.order; ++j) {
        t.add({detail::format_number(tau), std::to_string(j), fixed(sums[j], 6),
               j == 0 ? "" : fixed(sums[j] - sums[j - 1], 9)});
      }
    }
    t.write(out.stream(), opt.csv());
  } else {
    Table t({"tau", p.target});
    for (double tau : p.taus) t.add({detail::format_number(tau), fixed(eval_partial_sum(s, tau, p.r), 6)});
    t.write(out.stream(), opt.csv());
  }
  return kOk;
}

int run_yield(const CommonOptions& opt, double r, const std::vector<double>& taus, bool from_price) {
  const auto m = load_model_config(opt.model_path);
  std::vector<YieldPoint> curve;
  if (from_price) {
    const auto s = price_coeffs(m, opt.order);
    for (double tau : taus) curve.push_back({tau, yield_from_price(eval_partial_sum(s, tau, r), tau)});
  } else {
    curve = yield_curve(m, opt.order, r, taus);
  }
  Output out(opt.out_path);
  Table t({"tau", "yield_percent"});
  for (const auto& pt : curve) t.add({detail::format_number(pt.tau), fixed(100.0 * pt.yield, 5)});
  t.write(out.stream(), opt.csv());
  return kOk;
}

int run_exact_cir(const CommonOptions& opt, const CIRParams& params, double r, const std::vector<double>& taus) {
  const CIRClosedForm cf(params);
  Output out(opt.out_path);
  Table t({"tau", "price", "yield_percent"});
  for (double tau : taus) {
    t.add({detail::format_number(tau), fixed(cf.price(tau, r), 6), tau > 0.0 ? fixed(100.0 * cf.yield(tau, r), 5) : ""});
  }
  t.write(out.stream(), opt.csv());
  return kOk;
}

struct FdOptions {
  double r = 0.0;
  double tau = 1.0;
  std::optional<double> r_max;
  std::optional<int> n_r, n_t;
  double theta = 0.5;
  bool profile = false;
  int study_levels = 0;
};

int run_fd(const CommonOptions& opt, const FdOptions& f) {
  const auto m = load_model_config(opt.model_path);
  FDGrid g = default_grid(f.r, f.tau);
  if (f.r_max) g.r_max = *f.r_max;
  if (f.n_r) g.n_r = *f.n_r;
  if (f.n_t) g.n_t = *f.n_t;
  g.theta = f.theta;
  Output out(opt.out_path);
  if (f.study_levels > 0) {
    Table t({"h", "dt", "price", "delta", "order"});
    for (const auto& lv : convergence_study(m, f.tau, f.r, g, f.study_levels)) {
      t.add({detail::format_number(lv.h), detail::format_number(lv.dt), fixed(lv.value, 9),
             std::isnan(lv.delta) ? "" : detail::format_number(lv.delta),
             std::isnan(lv.delta_order) ? "" : fixed(lv.delta_order, 3)});
    }
    t.write(out.stream(), opt.csv());
    return kOk;
  }
  const auto sol = fd_solve(m, f.tau, g);
  if (f.profile) {
    Table t({"r", "price"});
    for (int j = 0; j <= g.n_r; ++j) t.add({detail::format_number(sol.node(j)), fixed(sol.values[j], 9)});
    t.write(out.stream(), true);
  } else {
    Table t({"tau", "r", "price"});
    t.add({detail::format_number(f.tau), detail::format_number(f.r), fixed(fd_price_at(sol, f.r), 6)});
    t.write(out.stream(), opt.csv());
  }
  return kOk;
}

int run_table(const CommonOptions& opt, const std::string& id) {
  const auto rep = build_table(id);
  Output out(opt.out_path);
  if (!opt.csv()) out.stream() << "# " << rep.title << '\n';
  Table t({"row", "column", "computed", "printed", "reference", "deviation", "status", "note"});
  for (const auto& c : rep.cells) {
    t.add({c.row, c.column, fixed(c.computed, rep.decimals), fixed(c.printed, rep.decimals),
           fixed(c.reference, rep.decimals), fixed(c.deviation(), rep.decimals + 2), to_string(c.status()), c.note});
  }
  t.write(out.stream(), opt.csv());
  if (!rep.ok()) {
    std::cerr << "table " << id << ": " << rep.mismatches() << " cell(s) outside tolerance\n";
    return kMismatch;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor-series zero-coupon bond prices for one-factor short-rate models"};
  app.require_subcommand(1);

  CommonOptions common;

  std::string coeffs_target = "price";
  auto* coeffs = app.add_subcommand("coeffs", "Print the series coefficients c_k(r)");
  add_common(coeffs, common, true, true);
  coeffs->add_option("--target", coeffs_target)->capture_default_str()->check(CLI::IsMember({"price", "logprice"}));

  PriceOptions price_opt;
  auto* price = app.add_subcommand("price", "Evaluate truncated price or log-price series");
  add_common(price, common, true, true);
  price->add_option("--target", price_opt.target)->capture_default_str()->check(CLI::IsMember({"price", "logprice"}));
  price->add_option("--r", price_opt.r, "Short rate")->required();
  auto* tau_opt = price->add_option("--tau", price_opt.taus, "Time to maturity")->check(CLI::NonNegativeNumber);
  price->add_option("--taus", price_opt.taus, "Comma-separated maturities")->delimiter(',')->excludes(tau_opt)->check(CLI::NonNegativeNumber);
  price->add_flag("--converge", price_opt.converge, "Print partial sums for every order 0..J");

  double yield_r = 0.0;
  std::vector<double> yield_taus;
  bool yield_from_price_series = false;
  auto* yield = app.add_subcommand("yield", "Yield curve R = -f/tau from the log-price series, in percent");
  add_common(yield, common, true, true);
  yield->add_option("--r", yield_r, "Short rate")->required();
  yield->add_option("--taus,--tau", yield_taus, "Comma-separated maturities")->delimiter(',')->required()->check(CLI::PositiveNumber);
  yield->add_flag("--from-price", yield_from_price_series, "Use -ln(price partial sum)/tau instead");

  CIRParams cir;
  double cir_r = 0.0;
  std::vector<double> cir_taus;
  auto* exact = app.add_subcommand("exact-cir", "Closed-form CIR bond price and yield");
  add_common(exact, common, false, false);
  exact->add_option("--alpha", cir.alpha)->required();
  exact->add_option("--beta", cir.beta)->required();
  exact->add_option("--sigma", cir.sigma)->required()->check(CLI::NonNegativeNumber);
  exact->add_option("--r", cir_r)->required()->check(CLI::NonNegativeNumber);
  exact->add_option("--tau,--taus", cir_taus, "Maturity or comma-separated maturities")->delimiter(',')->required()->check(CLI::NonNegativeNumber);

  FdOptions fd_opt;
  auto* fd = app.add_subcommand("fd", "Finite-difference (theta-scheme) bond price");
  add_common(fd, common, true, false);
  fd->add_option("--r", fd_opt.r, "Short rate")->required()->check(CLI::NonNegativeNumber);
  fd->add_option("--tau", fd_opt.tau, "Time to maturity")->required()->check(CLI::NonNegativeNumber);
  fd->add_option("--r-max", fd_opt.r_max, "Upper end of the rate grid (default max(10 r, 0.5))");
  fd->add_option("--n-r", fd_opt.n_r, "Space intervals (default 2000)");
  fd->add_option("--n-t", fd_opt.n_t, "Time steps (default 1000 tau, capped at 20000)");
  fd->add_option("--theta", fd_opt.theta, "0.5 = Crank-Nicolson, 1 = implicit Euler")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  fd->add_flag("--profile", fd_opt.profile, "Dump the full (r, price) profile as CSV");
  fd->add_option("--study", fd_opt.study_levels, "Grid-halving convergence study with this many levels")->check(CLI::Range(2, 12));

  std::string table_id;
  auto* table = app.add_subcommand("table", "Reproduce a reference table and compare");
  add_common(table, common, false, false);
  table->add_option("--id", table_id)->required()->check(CLI::IsMember(table_ids()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*coeffs) return run_coeffs(common, coeffs_target);
    if (*price) {
      if (price_opt.taus.empty()) throw CLI::ValidationError("price", "one of --tau or --taus is required");
      return run_price(common, price_opt);
    }
    if (*yield) return run_yield(common, yield_r, yield_taus, yield_from_price_series);
    if (*exact) return run_exact_cir(common, cir, cir_r, cir_taus);
    if (*fd) return run_fd(common, fd_opt);
    if (*table) return run_table(common, table_id);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    // domain_error, NumericalError, TermLimitError
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
