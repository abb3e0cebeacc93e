// Acceptance checks. One PASS/FAIL line per criterion; exits nonzero if any
// criterion fails.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "sconvex/sconvex.hpp"

using namespace sconvex;
namespace fs = std::filesystem;

namespace {

// Tolerances
constexpr double kIdentityTol = 1e-8;
constexpr double kBoundTol = 1e-9;
constexpr double kEqualityTol = 1e-10;
constexpr double kReductionTol = 1e-12;
constexpr double kCrosscheckTol = 1e-9;
constexpr double kAnchorTol = 1e-6;
constexpr double kOracleTol = 1e-12;
constexpr double kSharpnessTol = 1e-10;
constexpr double kSe4Tol = 1e-12;

constexpr std::uint64_t kSeed = 42;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << std::left << std::setw(28) << name
            << detail << std::endl;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::size_t checked(const SuiteReport& r) { return r.cases_run - r.skipped; }

std::string summary(const SuiteReport& r) {
  return "cases " + std::to_string(r.cases_run) + ", skipped " + std::to_string(r.skipped) +
         ", violations " + std::to_string(r.violations.size()) + ", worst " +
         num(r.worst_margin);
}

SuiteConfig base(std::size_t cases) {
  SuiteConfig cfg;
  cfg.seed = kSeed;
  cfg.cases = cases;
  cfg.identity_tol = kIdentityTol;
  cfg.bound_tol = kBoundTol;
  cfg.reduction_tol = kReductionTol;
  cfg.crosscheck_tol = kCrosscheckTol;
  return cfg;
}

FuncHandle fn(const char* text) { return FuncHandle::from_power_sum(parse_function_dsl(text)); }

void identity() {
  const SuiteReport r = run_identity_suite(base(1000));
  report(1, "identity", r.passed() && checked(r) == 1000, summary(r));
}

void first_power_bound() {
  const SuiteReport r = run_bound_suite(base(5000), Theorem::SE2);
  const auto eq = evaluate_theorem(Theorem::SE2, fn("1*x^2"), {1, 3}, SParam(1.0), {})[0];
  const bool anchor = std::abs(eq.lhs - 23.0 / 6.0) <= kEqualityTol &&
                      std::abs(eq.rhs - 23.0 / 6.0) <= kEqualityTol;
  report(2, "se2 dominance", r.passed() && checked(r) >= 5000 && anchor,
         summary(r) + "; x^2 on (1,3): lhs " + num(eq.lhs) + " rhs " + num(eq.rhs));
}

void power_bounds() {
  bool ok = true;
  std::string detail;
  for (Theorem th : {Theorem::SE5, Theorem::SE6}) {
    const SuiteReport r = run_bound_suite(base(5000), th);
    ok = ok && r.passed() && checked(r) >= 5000;
    detail += theorem_name(th) + ": " + summary(r) + "; ";
  }
  report(3, "se5/se6 dominance", ok, detail);
}

void reductions() {
  const SuiteReport r = run_reduction_suite(base(1000));
  report(4, "reductions", r.passed(), summary(r));
}

void propositions() {
  SuiteConfig cfg = base(1);
  cfg.prop_intervals = 50;
  const SuiteReport r = run_prop_crosscheck_suite(cfg);
  const double lhs = prop_lhs(PropKind::SE3, {1, 4}, SParam(0.5));
  const double rhs = prop_rhs(PropKind::SE3, {1, 4}, SParam(0.5));
  const bool anchor =
      std::abs(lhs - 0.431653) <= kAnchorTol && std::abs(rhs - 0.638388) <= kAnchorTol;
  report(5, "proposition cross-checks", r.passed() && anchor,
         summary(r) + "; (1,4) s=1/2: lhs " + num(lhs) + " rhs " + num(rhs));
}

void sharpness() {
  const Triple t = hadamard_s_triple(fn("1*x^0.5"), 0.0, 1.0, SParam(0.5));
  const double gap = std::abs(t.right - t.mid);
  report(6, "s-Hadamard sharpness", gap <= kSharpnessTol,
         "sqrt on (0,1), s=1/2: mean " + num(t.mid) + " right " + num(t.right) + " gap " +
             num(gap));
}

void prior_art() {
  bool ok = true;
  std::string detail;
  for (Theorem th : {Theorem::HH, Theorem::DA, Theorem::PP, Theorem::PPC, Theorem::ADK}) {
    const SuiteReport r = run_bound_suite(base(1000), th);
    ok = ok && r.passed() && checked(r) >= 1000;
    detail += theorem_name(th) + " " + std::to_string(checked(r)) + "/" +
              std::to_string(r.violations.size()) + " ";
  }
  const FuncHandle sq = fn("1*x^2");
  const double da = bound_prior(PriorBoundKind::DA, sq, {1, 3});
  const double da_lhs = trapezoid_defect(sq, {1, 3});
  const FuncHandle g = fn("0.666666666666666667*x^1.5");
  const double adk = bound_prior(PriorBoundKind::ADK, g, {1, 4}, 2.0);
  const double adk_lhs = trapezoid_defect(g, {1, 4});
  // ADK value from a 30-digit evaluation; 11/45 is exact.
  ok = ok && std::abs(da - 2.0) <= kOracleTol && std::abs(da_lhs - 2.0 / 3.0) <= kOracleTol &&
       std::abs(adk - 1.35344671166927977655) <= kOracleTol &&
       std::abs(adk_lhs - 11.0 / 45.0) <= kOracleTol;
  report(7, "prior-art chain", ok,
         detail + "(checked/violations); DA " + num(da) + " vs " + num(da_lhs) + ", ADK " +
             num(adk) + " vs " + num(adk_lhs));
}

void se4_notice() {
  const double mismatch = se4_sign_discrepancy(kSeed, 100, 0.1, 10.0);
  SuiteConfig cfg = base(1);
  cfg.prop_intervals = 1;
  const SuiteReport r = run_prop_crosscheck_suite(cfg);
  bool noted = false;
  for (const auto& n : r.notes) {
    noted = noted || (n.find("exact negative") != std::string::npos &&
                      n.find("not asserted") != std::string::npos);
  }
  bool asserted = false;
  for (const auto& row : r.rows) asserted = asserted || row.theorem == "se4.printed";
  report(8, "se4 discrepancy notice", mismatch <= kSe4Tol && noted && !asserted,
         "max relative |printed + substituted| " + num(mismatch) + (noted ? ", notice emitted" : ""));
}

// Drops the runtime lines; everything else must match byte for byte.
std::string strip_runtime(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"runtime_ms\"") == std::string::npos) out += line + '\n';
  }
  return out;
}

void determinism() {
  const fs::path dir = fs::temp_directory_path();
  std::string texts[2];
  int codes[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("sconvex_accept_" + std::to_string(k) + ".json");
    const std::string cmd = std::string(SCONVEX_CLI_PATH) +
                            " verify --suite all --cases 1000 --seed 42 --format json --out " +
                            out.string() + " > /dev/null";
    codes[k] = std::system(cmd.c_str());
    std::ifstream in(out, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    texts[k] = ss.str();
    fs::remove(out);
  }
  const bool same = !texts[0].empty() && strip_runtime(texts[0]) == strip_runtime(texts[1]);
  report(9, "determinism", same && codes[0] == 0 && codes[1] == 0,
         "verify --suite all --seed 42 twice: " + std::string(same ? "identical" : "different") +
             " reports, " + std::to_string(texts[0].size()) + " bytes, exit " +
             std::to_string(codes[0]) + "/" + std::to_string(codes[1]));
}

}  // namespace

int main() {
  identity();
  first_power_bound();
  power_bounds();
  reductions();
  propositions();
  sharpness();
  prior_art();
  se4_notice();
  determinism();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
