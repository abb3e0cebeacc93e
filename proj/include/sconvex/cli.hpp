#pragma once

// Command-line front end. dispatch() is the whole program; tools/sconvex.cpp
// only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 an inequality or suite failed, 2 usage, parse or
// domain error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sconvex/bounds.hpp"
#include "sconvex/dsl.hpp"
#include "sconvex/errors.hpp"
#include "sconvex/funcmodel.hpp"
#include "sconvex/harness.hpp"
#include "sconvex/means.hpp"

namespace sconvex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// 15 significant digits.
inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

struct SGrid {
  double lo;
  double hi;
  double step;
};

/// Parses "LO:HI:STEP".
inline SGrid parse_s_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("s-grid must be LO:HI:STEP, got '" + text + "'");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw DomainError("s-grid must be LO:HI:STEP with LO <= HI and STEP > 0, got '" + text + "'");
  }
  return {parts[0], parts[1], parts[2]};
}

/// Grid check of the hypothesis each theorem places on f.
inline bool hypothesis_certified(Theorem th, const FuncHandle& f, const OrderedInterval& iv,
                                 SParam s, std::optional<double> q) {
  const double lo = iv.a();
  const double hi = iv.b();
  const double qv = q.value_or(1.0);
  auto dq = [&f, qv](double x) { return std::pow(std::abs(f.derivative(x)), qv); };
  auto d1 = [&f](double x) { return std::abs(f.derivative(x)); };
  const SParam one(1.0);
  switch (th) {
    case Theorem::SE2: return certify_s_convex(d1, s, lo, hi).certified;
    case Theorem::SE5:
    case Theorem::SE6: return certify_s_convex(dq, s, lo, hi).certified;
    case Theorem::S1:
    case Theorem::DA: return certify_s_convex(d1, one, lo, hi).certified;
    case Theorem::S2:
    case Theorem::S3:
    case Theorem::PP: return certify_s_convex(dq, one, lo, hi).certified;
    case Theorem::PPC:
    case Theorem::ADK: return certify_concave(dq, lo, hi).certified;
    case Theorem::HH:
    case Theorem::BULLEN: return certify_s_convex(f.value, one, lo, hi).certified;
    case Theorem::HHS: return certify_s_convex(f.value, s, lo, hi).certified;
  }
  return false;
}

inline void print_report(std::ostream& out, const BoundReport& r) {
  out << "theorem " << r.theorem_id << '\n'
      << "lhs " << fmt(r.lhs) << '\n'
      << "rhs " << fmt(r.rhs) << '\n'
      << "margin " << fmt(r.margin) << '\n'
      << "holds " << (r.holds ? "true" : "false") << '\n';
}

namespace detail {

inline Theorem require_theorem(const std::string& name) {
  if (auto th = parse_theorem(name)) return *th;
  throw DomainError("unknown theorem '" + name +
                    "' (expected se2, se5, se6, s1, s2, s3, da, pp, ppc, adk, hh, hhs, bullen)");
}

inline std::vector<SuiteReport> run_suites(const std::string& suite, const SuiteConfig& cfg) {
  std::vector<SuiteReport> reports;
  if (suite == "identity" || suite == "all") reports.push_back(run_identity_suite(cfg));
  if (suite == "bounds" || suite == "all") reports.push_back(run_all_bound_suites(cfg));
  if (suite == "reductions" || suite == "all") reports.push_back(run_reduction_suite(cfg));
  if (suite == "props" || suite == "all") reports.push_back(run_prop_crosscheck_suite(cfg));
  return reports;
}

}  // namespace detail

/// Writes a single report as one JSON object and several as a JSON array.
inline void write_reports(std::ostream& os, const std::vector<SuiteReport>& reports,
                          const std::string& format, bool include_runtime = true) {
  if (format == "csv") {
    write_csv_header(os);
    for (const auto& r : reports) write_csv_rows(os, r);
    return;
  }
  nlohmann::json doc;
  if (reports.size() == 1) {
    doc = to_json(reports.front(), include_runtime);
  } else {
    doc = nlohmann::json::array();
    for (const auto& r : reports) doc.push_back(to_json(r, include_runtime));
  }
  os << doc.dump(2) << '\n';
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral inequalities for functions with s-convex derivatives"};
  app.require_subcommand(1);

  double a = 0.0;
  double b = 0.0;
  std::optional<double> p;
  std::optional<double> q;
  double s = 1.0;
  std::string expr;
  std::string theorem;

  auto* means = app.add_subcommand("means", "Arithmetic, geometric and generalized log means");
  means->add_option("--a", a, "Left endpoint")->required();
  means->add_option("--b", b, "Right endpoint")->required();
  means->add_option("--p", p, "Order of the generalized logarithmic mean");

  auto* defect = app.add_subcommand("defect", "Bullen-type defect of f on [a,b]");
  defect->add_option("--f", expr, "Function expression, e.g. \"1*x^2 + 0.5\"")->required();
  defect->add_option("--a", a)->required();
  defect->add_option("--b", b)->required();

  auto* bound = app.add_subcommand("bound", "Evaluate one inequality for f on [a,b]");
  bound->add_option("--theorem", theorem, "se2|se5|se6|s1|s2|s3|da|pp|ppc|adk|hh|hhs|bullen")
      ->required();
  bound->add_option("--f", expr)->required();
  bound->add_option("--a", a)->required();
  bound->add_option("--b", b)->required();
  bound->add_option("--s", s, "Exponent s in (0,1]")->required();
  bound->add_option("--q", q, "Exponent q");

  std::string suite = "all";
  std::size_t cases = 1000;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::string out_path;
  std::string format = "json";
  auto* verify = app.add_subcommand("verify", "Run property suites and write a report");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"identity", "bounds", "reductions", "props", "all"}));
  verify->add_option("--cases", cases)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--tol", tol, "Bound tolerance");
  verify->add_option("--out", out_path)->required();
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string s_grid;
  auto* sweep = app.add_subcommand("sweep", "Evaluate one inequality over a range of s");
  sweep->add_option("--theorem", theorem)->required();
  sweep->add_option("--f", expr)->required();
  sweep->add_option("--a", a)->required();
  sweep->add_option("--b", b)->required();
  sweep->add_option("--s-grid", s_grid, "LO:HI:STEP")->required();
  sweep->add_option("--q", q);
  sweep->add_option("--out", out_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*means) {
      const OrderedInterval iv(a, b);
      out << "A " << fmt(arithmetic_mean(iv)) << '\n' << "G " << fmt(geometric_mean(iv)) << '\n';
      if (p) {
        out << "Lp^p " << fmt(gen_log_mean_pow(iv, *p)) << '\n'
            << "Lp " << fmt(gen_log_mean(iv, *p)) << '\n';
      }
      return kExitOk;
    }

    if (*defect) {
      const OrderedInterval iv(a, b);
      const FuncHandle f = FuncHandle::from_power_sum(parse_function_dsl(expr));
      out << fmt(bullen_type_defect(f, iv)) << '\n';
      return kExitOk;
    }

    if (*bound) {
      const Theorem th = detail::require_theorem(theorem);
      const OrderedInterval iv(a, b);
      const SParam sp(s);
      const FuncHandle f = FuncHandle::from_power_sum(parse_function_dsl(expr));
      bool all_hold = true;
      for (const auto& r : evaluate_theorem(th, f, iv, sp, q)) {
        print_report(out, r);
        all_hold = all_hold && r.holds;
      }
      out << "hypothesis "
          << (hypothesis_certified(th, f, iv, sp, q) ? "certified" : "not certified") << '\n';
      return all_hold ? kExitOk : kExitViolation;
    }

    if (*verify) {
      SuiteConfig cfg;
      cfg.seed = seed;
      cfg.cases = cases;
      if (tol) cfg.bound_tol = *tol;
      const auto reports = detail::run_suites(suite, cfg);
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw DomainError("cannot open '" + out_path + "' for writing");
      write_reports(file, reports, format);
      bool ok = true;
      for (const auto& r : reports) {
        out << r.suite_id << ": cases " << r.cases_run << ", skipped " << r.skipped
            << ", violations " << r.violations.size() << ", warnings " << r.warnings
            << ", worst margin " << fmt(r.worst_margin) << (r.passed() ? ", PASS" : ", FAIL")
            << '\n';
        for (const auto& n : r.notes) out << "  note: " << n << '\n';
        ok = ok && r.passed();
      }
      return ok ? kExitOk : kExitViolation;
    }

    if (*sweep) {
      const Theorem th = detail::require_theorem(theorem);
      const OrderedInterval iv(a, b);
      const SGrid grid = parse_s_grid(s_grid);
      const FuncHandle f = FuncHandle::from_power_sum(parse_function_dsl(expr));
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw DomainError("cannot open '" + out_path + "' for writing");
      file << "s,theorem,lhs,rhs,margin,holds\n";
      bool all_hold = true;
      std::size_t rows = 0;
      const auto steps = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9));
      for (long k = 0; k <= steps; ++k) {
        const SParam sp(std::min(grid.hi, grid.lo + static_cast<double>(k) * grid.step));
        for (const auto& r : evaluate_theorem(th, f, iv, sp, q)) {
          file << fmt(sp.value()) << ',' << r.theorem_id << ',' << fmt(r.lhs) << ','
               << fmt(r.rhs) << ',' << fmt(r.margin) << ',' << (r.holds ? "true" : "false")
               << '\n';
          all_hold = all_hold && r.holds;
          ++rows;
        }
      }
      out << "rows " << rows << '\n' << "holds " << (all_hold ? "true" : "false") << '\n';
      return all_hold ? kExitOk : kExitViolation;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace sconvex::cli
