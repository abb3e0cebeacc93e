#pragma once

// Deterministic property suites over generated instances, and their JSON and
// CSV report formats.
//
// Case i of a suite draws everything from the sub-seed (seed ^ i), so a case
// never depends on the cases evaluated before it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sconvex/bounds.hpp"
#include "sconvex/funcmodel.hpp"
#include "sconvex/means.hpp"
#include "sconvex/means_bounds.hpp"

namespace sconvex {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t cases = 1000;
  std::vector<double> s_grid{0.25, 0.5, 0.75, 1.0};
  std::vector<double> q_grid{1.5, 2.0, 3.0};
  double lo_min = 0.1;
  double hi_max = 10.0;
  double identity_tol = 1e-8;
  double bound_tol = 1e-9;
  double reduction_tol = 1e-12;
  /// Mean-form left sides against quadrature.
  double crosscheck_tol = 1e-9;
  /// Intervals per s value in the proposition cross-check.
  std::size_t prop_intervals = 50;
  GridCounts grid{};

  void validate() const {
    if (cases < 1) throw DomainError("suite needs at least one case");
    if (s_grid.empty() || q_grid.empty()) throw DomainError("s and q grids must be nonempty");
    for (double s : s_grid) SParam{s};
    for (double q : q_grid) HolderPair{q};
    if (!(lo_min > 0.0) || !(hi_max > lo_min)) throw DomainError("need 0 < lo_min < hi_max");
    if (!(identity_tol > 0.0 && bound_tol > 0.0 && reduction_tol > 0.0 && crosscheck_tol > 0.0)) {
      throw DomainError("tolerances must be positive");
    }
  }

  GeneratorConfig generator() const {
    GeneratorConfig g;
    g.lo_min = lo_min;
    g.hi_max = hi_max;
    g.grid = grid;
    return g;
  }
};

enum class CaseStatus { Ok, Warning, Violation, Skipped };

inline std::string status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::Ok: return "ok";
    case CaseStatus::Warning: return "warning";
    case CaseStatus::Violation: return "violation";
    case CaseStatus::Skipped: return "skipped";
  }
  return "?";
}

/// One checked relation. `normalized` is the margin on the scale the suite
/// tolerance applies to; the case is a violation iff normalized < -tol.
struct CaseRecord {
  std::size_t case_id = 0;
  std::string theorem;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> s;
  std::optional<double> q;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double normalized = 0.0;
  CaseStatus status = CaseStatus::Ok;
};

struct SuiteReport {
  std::string suite_id;
  std::uint64_t seed = 0;
  std::size_t cases_run = 0;
  std::size_t skipped = 0;
  std::size_t warnings = 0;
  std::vector<CaseRecord> violations;
  double worst_margin = std::numeric_limits<double>::infinity();
  double runtime_ms = 0.0;
  std::vector<CaseRecord> rows;
  std::vector<std::string> notes;

  /// No violations, and at least one case survived hypothesis checks.
  bool passed() const noexcept { return violations.empty() && skipped < cases_run; }

  void add(CaseRecord r) {
    ++cases_run;
    if (r.status == CaseStatus::Skipped) {
      ++skipped;
    } else {
      worst_margin = std::min(worst_margin, r.normalized);
      if (r.status == CaseStatus::Warning) ++warnings;
      if (r.status == CaseStatus::Violation) violations.push_back(r);
    }
    rows.push_back(std::move(r));
  }

  void merge(const SuiteReport& other) {
    for (const auto& r : other.rows) add(r);
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }

  void finish() {
    if (cases_run > 0 && skipped == cases_run) {
      notes.push_back("all " + std::to_string(cases_run) +
                      " cases were skipped by hypothesis checks; suite fails");
    }
  }
};

namespace detail {

inline CaseRecord make_record(std::size_t id, std::string theorem, const OrderedInterval& iv,
                              std::optional<double> s, std::optional<double> q) {
  CaseRecord r;
  r.case_id = id;
  r.theorem = std::move(theorem);
  r.a = iv.a();
  r.b = iv.b();
  r.s = s;
  r.q = q;
  return r;
}

inline void classify(CaseRecord& r, double tol) {
  if (!std::isfinite(r.normalized) || r.normalized < -tol) {
    r.status = CaseStatus::Violation;
  } else if (r.margin < 0.0) {
    r.status = CaseStatus::Warning;
  } else {
    r.status = CaseStatus::Ok;
  }
}

/// lhs <= rhs with tolerance relative to max(1, |rhs|).
inline CaseRecord bound_record(std::size_t id, std::string theorem, const OrderedInterval& iv,
                               std::optional<double> s, std::optional<double> q, double lhs,
                               double rhs, double tol) {
  CaseRecord r = make_record(id, std::move(theorem), iv, s, q);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.normalized = r.margin / std::max(1.0, std::abs(rhs));
  classify(r, tol);
  return r;
}

/// lhs == rhs with tolerance relative to 1 + |lhs|.
inline CaseRecord equality_record(std::size_t id, std::string theorem, const OrderedInterval& iv,
                                  std::optional<double> s, std::optional<double> q, double lhs,
                                  double rhs, double tol) {
  CaseRecord r = make_record(id, std::move(theorem), iv, s, q);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -std::abs(lhs - rhs);
  r.normalized = r.margin / (1.0 + std::abs(lhs));
  classify(r, tol);
  return r;
}

/// lhs == rhs with purely relative tolerance.
inline CaseRecord relative_record(std::size_t id, std::string theorem, const OrderedInterval& iv,
                                  std::optional<double> s, std::optional<double> q, double lhs,
                                  double rhs, double tol) {
  CaseRecord r = make_record(id, std::move(theorem), iv, s, q);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.normalized = scale > 0.0 ? r.margin / scale : 0.0;
  classify(r, tol);
  return r;
}

inline CaseRecord skipped_record(std::size_t id, std::string theorem, const OrderedInterval& iv,
                                 std::optional<double> s, std::optional<double> q) {
  CaseRecord r = make_record(id, std::move(theorem), iv, s, q);
  r.status = CaseStatus::Skipped;
  return r;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double pick(const std::vector<double>& grid, std::size_t i) { return grid[i % grid.size()]; }

inline FuncHandle handle_of(const PowerSum& ps) { return FuncHandle::from_power_sum(ps); }

}  // namespace detail

/// Checks that the signed defect of f equals its integral representation.
inline CaseRecord check_identity(std::size_t id, const FuncHandle& f, const OrderedInterval& iv,
                                 std::optional<double> s, double tol) {
  return detail::equality_record(id, "se1", iv, s, std::nullopt, bullen_type_defect_signed(f, iv),
                                 lemma_identity_rhs(f, iv), tol);
}

inline SuiteReport run_identity_suite(const SuiteConfig& cfg) {
  cfg.validate();
  detail::Stopwatch clock;
  SuiteReport report{"identity", cfg.seed};
  const GeneratorConfig gen = cfg.generator();
  for (std::size_t i = 0; i < cfg.cases; ++i) {
    const SParam s(detail::pick(cfg.s_grid, i));
    const auto inst = gen_certified_instance(cfg.seed ^ i, s, gen);
    report.add(check_identity(i, inst.f, inst.iv, s.value(), cfg.identity_tol));
  }
  report.finish();
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

namespace detail {

/// f' = c x^m with 0 < m q <= 1, so |f'|^q is concave.
struct ConcaveInstance {
  PowerSum f;
  OrderedInterval iv;
  double q;
};

inline ConcaveInstance concave_instance(std::uint64_t seed, double q, double lo_min,
                                        double hi_max) {
  SplitMix64 rng(seed);
  const OrderedInterval iv = sample_interval(rng, lo_min, hi_max);
  const double m = (1.0 - rng.uniform()) / q;  // (0, 1/q]
  const double c = rng.uniform(0.5, 2.0);
  return {PowerSum::monomial(c, m).antiderivative(), iv, q};
}

inline bool certified_power(const PowerSum& df, double q, SParam s, const OrderedInterval& iv,
                            const GridCounts& grid) {
  auto phi = [&df, q](double x) { return std::pow(std::abs(df(x)), q); };
  return certify_s_convex(phi, s, iv.a(), iv.b(), grid).certified;
}

}  // namespace detail

/// One case of a bound suite. Hypotheses are certified before the bound is
/// asserted; a case whose hypothesis fails is recorded as skipped.
inline std::vector<CaseRecord> bound_case(const SuiteConfig& cfg, Theorem th, std::size_t i) {
  const std::uint64_t sub = cfg.seed ^ i;
  const std::string id = theorem_name(th);
  const GeneratorConfig gen = cfg.generator();
  const double s_draw = detail::pick(cfg.s_grid, i);
  const double q_draw = detail::pick(cfg.q_grid, i / cfg.s_grid.size());

  auto records = [&](const std::vector<BoundReport>& reports, std::optional<double> s,
                     std::optional<double> q) {
    std::vector<CaseRecord> out;
    for (const auto& r : reports) {
      out.push_back(detail::bound_record(i, r.theorem_id, OrderedInterval(r.a, r.b), s, q, r.lhs,
                                         r.rhs, cfg.bound_tol));
    }
    return out;
  };

  switch (th) {
    case Theorem::SE2: {
      const SParam s(s_draw);
      const auto inst = gen_certified_instance(sub, s, gen);
      return records(evaluate_theorem(th, inst.f, inst.iv, s, std::nullopt), s_draw, std::nullopt);
    }
    case Theorem::SE5:
    case Theorem::SE6: {
      const SParam s(s_draw);
      const auto inst = gen_certified_instance(sub, s, gen);
      if (!detail::certified_power(inst.df_power, q_draw, s, inst.iv, cfg.grid)) {
        return {detail::skipped_record(i, id, inst.iv, s_draw, q_draw)};
      }
      return records(evaluate_theorem(th, inst.f, inst.iv, s, q_draw), s_draw, q_draw);
    }
    case Theorem::S1:
    case Theorem::DA: {
      const SParam one(1.0);
      const auto inst = gen_certified_instance(sub, one, gen);
      return records(evaluate_theorem(th, inst.f, inst.iv, one, std::nullopt), std::nullopt,
                     std::nullopt);
    }
    case Theorem::S2:
    case Theorem::S3:
    case Theorem::PP: {
      const SParam one(1.0);
      const auto inst = gen_certified_instance(sub, one, gen);
      if (!detail::certified_power(inst.df_power, q_draw, one, inst.iv, cfg.grid)) {
        return {detail::skipped_record(i, id, inst.iv, std::nullopt, q_draw)};
      }
      return records(evaluate_theorem(th, inst.f, inst.iv, one, q_draw), std::nullopt, q_draw);
    }
    case Theorem::PPC:
    case Theorem::ADK: {
      const auto inst = detail::concave_instance(sub, q_draw, cfg.lo_min, cfg.hi_max);
      const PowerSum df = inst.f.derivative();
      auto phi = [&df, q = q_draw](double x) { return std::pow(std::abs(df(x)), q); };
      if (!certify_concave(phi, inst.iv.a(), inst.iv.b(), cfg.grid).certified) {
        return {detail::skipped_record(i, id, inst.iv, std::nullopt, q_draw)};
      }
      return records(evaluate_theorem(th, detail::handle_of(inst.f), inst.iv, SParam(1.0), q_draw),
                     std::nullopt, q_draw);
    }
    case Theorem::HH:
    case Theorem::BULLEN: {
      // The chain is asserted for phi = |f'|, which the generator certifies convex.
      const SParam one(1.0);
      const auto inst = gen_certified_instance(sub, one, gen);
      return records(evaluate_theorem(th, detail::handle_of(inst.df_power), inst.iv, one,
                                      std::nullopt),
                     std::nullopt, std::nullopt);
    }
    case Theorem::HHS: {
      const SParam s(s_draw);
      const auto inst = gen_certified_instance(sub, s, gen);
      return records(evaluate_theorem(th, detail::handle_of(inst.df_power), inst.iv, s,
                                      std::nullopt),
                     s_draw, std::nullopt);
    }
  }
  throw DomainError("unknown theorem");
}

inline SuiteReport run_bound_suite(const SuiteConfig& cfg, Theorem th) {
  cfg.validate();
  detail::Stopwatch clock;
  SuiteReport report{"bounds." + theorem_name(th), cfg.seed};
  for (std::size_t i = 0; i < cfg.cases; ++i) {
    try {
      for (auto& r : bound_case(cfg, th, i)) report.add(std::move(r));
    } catch (const GenerationError& e) {
      report.notes.push_back("case " + std::to_string(i) + ": " + e.what());
      CaseRecord r;
      r.case_id = i;
      r.theorem = theorem_name(th);
      r.status = CaseStatus::Skipped;
      report.add(r);
    }
  }
  report.finish();
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

/// Every theorem's bound suite, merged into one report.
inline SuiteReport run_all_bound_suites(const SuiteConfig& cfg) {
  detail::Stopwatch clock;
  SuiteReport report{"bounds", cfg.seed};
  for (Theorem th : kAllTheorems) {
    const SuiteReport part = run_bound_suite(cfg, th);
    report.merge(part);
    if (!part.passed() && part.violations.empty()) {
      report.notes.push_back(part.suite_id + " skipped every case");
      // Keep the merged report failing even though other theorems ran.
      CaseRecord r;
      r.theorem = theorem_name(th);
      r.status = CaseStatus::Violation;
      r.margin = r.normalized = -std::numeric_limits<double>::infinity();
      report.add(r);
    }
  }
  report.finish();
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

/// Convex-case and q = 1 reductions of the s-convex bounds on random data.
inline SuiteReport run_reduction_suite(const SuiteConfig& cfg) {
  cfg.validate();
  detail::Stopwatch clock;
  SuiteReport report{"reductions", cfg.seed};
  const SParam one(1.0);
  for (std::size_t i = 0; i < cfg.cases; ++i) {
    SplitMix64 rng(cfg.seed ^ i);
    const OrderedInterval iv = sample_interval(rng, cfg.lo_min, cfg.hi_max);
    const double dfa = rng.uniform(0.0, 5.0);
    const double dfb = rng.uniform(0.0, 5.0);
    const double q = detail::pick(cfg.q_grid, i);
    const SParam s(detail::pick(cfg.s_grid, i));
    const double tol = cfg.reduction_tol;

    report.add(detail::relative_record(i, "se2->s1", iv, 1.0, std::nullopt,
                                       bound_se2(dfa, dfb, iv, one),
                                       bound_ms(ConvexBoundKind::S1, dfa, dfb, iv), tol));
    report.add(detail::relative_record(i, "se5->s2", iv, 1.0, q,
                                       bound_se5(dfa, dfb, iv, one, HolderPair(q)),
                                       bound_ms(ConvexBoundKind::S2, dfa, dfb, iv, q), tol));
    report.add(detail::relative_record(i, "se6->s3", iv, 1.0, q, bound_se6(dfa, dfb, iv, one, q),
                                       bound_ms(ConvexBoundKind::S3, dfa, dfb, iv, q), tol));
    report.add(detail::relative_record(i, "se6(q=1)->se2", iv, s.value(), 1.0,
                                       bound_se6(dfa, dfb, iv, s, 1.0),
                                       bound_se2(dfa, dfb, iv, s), tol));
  }
  report.finish();
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

/// Checks that the printed reciprocal-family second term is the exact negative
/// of the substituted one: coefficient-wise over an s grid and numerically on
/// `samples` random (interval, s) pairs. Returns the worst relative mismatch.
inline double se4_sign_discrepancy(std::uint64_t seed, std::size_t samples, double lo_min,
                                   double hi_max) {
  double worst = 0.0;
  auto rel = [](double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale > 0.0 ? std::abs(x + y) / scale : 0.0;
  };
  for (int k = 1; k < 100; ++k) {
    const double s = k / 100.0;
    const auto sub = se4_substituted_numerator(s);
    const auto printed = se4_printed_numerator(s);
    worst = std::max({worst, rel(sub.coef_a, printed.coef_a), rel(sub.coef_b, printed.coef_b)});
  }
  for (std::size_t i = 0; i < samples; ++i) {
    SplitMix64 rng(seed ^ (0x5e4ULL + i));
    const OrderedInterval iv = sample_interval(rng, lo_min, hi_max);
    const double s = rng.uniform(0.01, 0.99);
    const auto d = se4_second_term(iv, s);
    worst = std::max(worst, rel(d.substituted_term, d.printed_term));
  }
  return worst;
}

/// Mean-form left sides against quadrature, and dominance of all six
/// substitution-derived right sides.
inline SuiteReport run_prop_crosscheck_suite(const SuiteConfig& cfg) {
  cfg.validate();
  detail::Stopwatch clock;
  SuiteReport report{"props", cfg.seed};
  const QuadOptions tight{1e-13, 1e-13, 60, 20000};
  std::size_t id = 0;
  for (int k = 1; k <= 10; ++k) {
    const double sv = k / 10.0;
    const SParam s(sv);
    const bool recip_ok = sv < 1.0;
    for (std::size_t j = 0; j < cfg.prop_intervals; ++j, ++id) {
      SplitMix64 rng(cfg.seed ^ id);
      const OrderedInterval iv = sample_interval(rng, cfg.lo_min, cfg.hi_max);
      const double q = detail::pick(cfg.q_grid, id);

      const FuncHandle power = FuncHandle::from_power_sum(PowerSum::monomial(1.0, sv));
      const double power_lhs = prop_power_lhs(iv, s);
      report.add(detail::equality_record(id, "se3.lhs~quad", iv, sv, std::nullopt, power_lhs,
                                         bullen_type_defect(power.without_exact_integral(), iv,
                                                            tight),
                                         cfg.crosscheck_tol));
      if (recip_ok) {
        const FuncHandle recip =
            FuncHandle::from_power_sum(PowerSum::monomial(1.0 / (1.0 - sv), 1.0 - sv));
        report.add(detail::equality_record(
            id, "se4.lhs~quad", iv, sv, std::nullopt, prop_recip_lhs(iv, sv),
            bullen_type_defect(recip.without_exact_integral(), iv, tight), cfg.crosscheck_tol));
      }
      for (PropKind kind : {PropKind::SE3, PropKind::SE4, PropKind::SE7, PropKind::SE8,
                            PropKind::SE9, PropKind::SE10}) {
        if (prop_is_reciprocal(kind) && !recip_ok) continue;
        const bool uses_q = kind != PropKind::SE3 && kind != PropKind::SE4;
        const std::optional<double> qk = uses_q ? std::optional<double>(q) : std::nullopt;
        report.add(detail::bound_record(id, prop_name(kind), iv, sv, qk, prop_lhs(kind, iv, s),
                                        prop_rhs(kind, iv, s, qk), cfg.bound_tol));
      }
    }
  }

  const double mismatch = se4_sign_discrepancy(cfg.seed, 100, cfg.lo_min, cfg.hi_max);
  std::ostringstream note;
  note.precision(3);
  if (mismatch <= 1e-12) {
    note << "se4 as printed: the |f'(a)| term's numerator a(s-2^{s+2}+2)-b(s2^{s+1}+s+2) is the "
            "exact negative of the substituted b(s2^{s+1}+s+2)+a(2^{s+2}-s-2) (max relative "
            "mismatch "
         << mismatch << " over coefficients and 100 samples); the printed bound is not asserted";
  } else {
    note << "se4 as printed: sign comparison inconclusive, max relative mismatch " << mismatch;
  }
  report.notes.push_back(note.str());
  report.finish();
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

/// Report object: {suite, seed, cases_run, skipped, violations[], worst_margin,
/// runtime_ms} plus warnings and notes.
inline nlohmann::json to_json(const SuiteReport& r, bool include_runtime = true) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"case", v.case_id},
                          {"theorem", v.theorem},
                          {"a", v.a},
                          {"b", v.b},
                          {"s", optional_json(v.s)},
                          {"q", optional_json(v.q)},
                          {"lhs", v.lhs},
                          {"rhs", v.rhs},
                          {"margin", v.margin}});
  }
  nlohmann::json j = {{"suite", r.suite_id},
                      {"seed", r.seed},
                      {"cases_run", r.cases_run},
                      {"skipped", r.skipped},
                      {"violations", violations},
                      {"worst_margin", std::isfinite(r.worst_margin)
                                           ? nlohmann::json(r.worst_margin)
                                           : nlohmann::json(nullptr)},
                      {"warnings", r.warnings},
                      {"notes", r.notes}};
  if (include_runtime) j["runtime_ms"] = r.runtime_ms;
  return j;
}

inline void write_csv_header(std::ostream& os) {
  os << "suite,case,theorem,a,b,s,q,lhs,rhs,margin,status\n";
}

/// One row per checked case.
inline void write_csv_rows(std::ostream& os, const SuiteReport& r) {
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  auto opt = [&num](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (const auto& row : r.rows) {
    os << r.suite_id << ',' << row.case_id << ',' << row.theorem << ',' << num(row.a) << ','
       << num(row.b) << ',' << opt(row.s) << ',' << opt(row.q) << ',' << num(row.lhs) << ','
       << num(row.rhs) << ',' << num(row.margin) << ',' << status_name(row.status) << '\n';
  }
}

}  // namespace sconvex
