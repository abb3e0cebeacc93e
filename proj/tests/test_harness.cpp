#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "sconvex/harness.hpp"

using namespace sconvex;

namespace {

SuiteConfig small(std::size_t cases) {
  SuiteConfig cfg;
  cfg.cases = cases;
  cfg.prop_intervals = 3;
  return cfg;
}

}  // namespace

TEST(Identity, HoldsOnGeneratedInstances) {
  const auto r = run_identity_suite(small(60));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cases_run, 60u);
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_GE(r.worst_margin, -1e-8);
}

// A derivative that does not match f must break the identity.
TEST(Identity, DetectsCorruptedDerivative) {
  FuncHandle f = FuncHandle::from_power_sum(PowerSum::monomial(1.0, 2.0));
  const CaseRecord good = check_identity(0, f, {1, 3}, 1.0, 1e-8);
  EXPECT_NE(good.status, CaseStatus::Violation);
  EXPECT_LE(std::abs(good.margin), 1e-12);
  f.derivative = [](double x) { return 2.0 * x + 0.1; };
  const CaseRecord bad = check_identity(0, f, {1, 3}, 1.0, 1e-8);
  EXPECT_EQ(bad.status, CaseStatus::Violation);

  SuiteReport report{"identity", 0};
  report.add(bad);
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.violations.size(), 1u);
}

TEST(Records, Classification) {
  const OrderedInterval iv(1, 2);
  EXPECT_EQ(detail::bound_record(0, "t", iv, {}, {}, 1.0, 2.0, 1e-9).status, CaseStatus::Ok);
  EXPECT_EQ(detail::bound_record(0, "t", iv, {}, {}, 1.0 + 1e-12, 1.0, 1e-9).status,
            CaseStatus::Warning);
  EXPECT_EQ(detail::bound_record(0, "t", iv, {}, {}, 1.1, 1.0, 1e-9).status,
            CaseStatus::Violation);
  EXPECT_EQ(detail::bound_record(0, "t", iv, {}, {}, NAN, 1.0, 1e-9).status,
            CaseStatus::Violation);
  EXPECT_EQ(detail::relative_record(0, "t", iv, {}, {}, 1.0, 1.0 + 1e-13, 1e-12).status,
            CaseStatus::Warning);
  EXPECT_EQ(detail::relative_record(0, "t", iv, {}, {}, 1.0, 1.0 + 1e-11, 1e-12).status,
            CaseStatus::Violation);
}

TEST(SuiteReport, AllSkippedFails) {
  SuiteReport r{"x", 1};
  r.add(detail::skipped_record(0, "se5", {1, 2}, 0.5, 2.0));
  r.add(detail::skipped_record(1, "se5", {1, 2}, 0.5, 2.0));
  r.finish();
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.violations.empty());
  ASSERT_EQ(r.notes.size(), 1u);
}

TEST(BoundSuites, EveryTheoremPassesSmallRun) {
  SuiteConfig cfg = small(24);
  for (Theorem th : kAllTheorems) {
    const auto r = run_bound_suite(cfg, th);
    EXPECT_TRUE(r.passed()) << theorem_name(th);
    EXPECT_LT(r.skipped, r.cases_run) << theorem_name(th);
  }
}

TEST(BoundSuites, CoversEverySAndQ) {
  SuiteConfig cfg = small(12);
  const auto r = run_bound_suite(cfg, Theorem::SE6);
  std::set<std::pair<double, double>> seen;
  for (const auto& row : r.rows) seen.insert({*row.s, *row.q});
  EXPECT_EQ(seen.size(), 12u);
}

TEST(Reductions, Pass) {
  const auto r = run_reduction_suite(small(200));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cases_run, 800u);
  EXPECT_GE(r.worst_margin, -1e-12);
}

TEST(Props, PassAndNote) {
  const auto r = run_prop_crosscheck_suite(small(1));
  EXPECT_TRUE(r.passed());
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.back().find("exact negative"), std::string::npos);
  EXPECT_LE(se4_sign_discrepancy(42, 100, 0.1, 10.0), 1e-12);
}

TEST(Determinism, SameSeedSameReport) {
  const SuiteConfig cfg = small(30);
  EXPECT_EQ(to_json(run_all_bound_suites(cfg), false), to_json(run_all_bound_suites(cfg), false));
  SuiteConfig other = cfg;
  other.seed = 43;
  std::ostringstream x, y;
  write_csv_rows(x, run_identity_suite(cfg));
  write_csv_rows(y, run_identity_suite(other));
  EXPECT_NE(x.str(), y.str());
}

TEST(Serialization, JsonSchema) {
  SuiteReport r{"demo", 9};
  r.add(detail::bound_record(4, "se2", {1, 2}, 0.5, std::nullopt, 2.0, 1.0, 1e-9));
  r.runtime_ms = 1.5;
  const auto j = to_json(r);
  for (const char* key : {"suite", "seed", "cases_run", "skipped", "violations", "worst_margin",
                          "runtime_ms", "warnings", "notes"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  ASSERT_EQ(j["violations"].size(), 1u);
  const auto& v = j["violations"][0];
  for (const char* key : {"case", "theorem", "a", "b", "s", "q", "lhs", "rhs", "margin"}) {
    EXPECT_TRUE(v.contains(key)) << key;
  }
  EXPECT_TRUE(v["q"].is_null());
  EXPECT_EQ(v["case"], 4);
  EXPECT_FALSE(to_json(r, false).contains("runtime_ms"));
}

TEST(Serialization, CsvRows) {
  SuiteReport r{"demo", 9};
  r.add(detail::bound_record(0, "se5", {1, 2}, 0.5, 2.0, 1.0, 2.0, 1e-9));
  std::ostringstream os;
  write_csv_header(os);
  write_csv_rows(os, r);
  EXPECT_EQ(os.str(), "suite,case,theorem,a,b,s,q,lhs,rhs,margin,status\n"
                      "demo,0,se5,1,2,0.5,2,1,2,1,ok\n");
}

TEST(SuiteConfig, Validation) {
  SuiteConfig cfg;
  cfg.s_grid = {1.5};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.q_grid = {1.0};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.lo_min = 0.0;
  EXPECT_THROW(run_identity_suite(cfg), DomainError);
}
