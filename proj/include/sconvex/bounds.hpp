#pragma once

// Evaluators for the Bullen-type defect, its integral representation, the
// s-convex bounds on it, their convex-case counterparts, and the classical
// Hermite-Hadamard family of inequalities.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sconvex/errors.hpp"
#include "sconvex/funcmodel.hpp"
#include "sconvex/means.hpp"
#include "sconvex/quadrature.hpp"

namespace sconvex {

/// Hölder conjugate pair; p is derived from q.
class HolderPair {
 public:
  explicit HolderPair(double q) : q_(q), p_(q / (q - 1.0)) {
    if (!(q > 1.0) || !std::isfinite(q)) {
      throw DomainError("Hölder exponent q must exceed 1, got " + std::to_string(q));
    }
  }
  double q() const noexcept { return q_; }
  double p() const noexcept { return p_; }

 private:
  double q_;
  double p_;
};

inline constexpr double kDefaultBoundTol = 1e-9;

/// One evaluated inequality lhs <= rhs.
struct BoundReport {
  std::string theorem_id;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> s;
  std::optional<double> q;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
  double tol = kDefaultBoundTol;

  static BoundReport make(std::string id, const OrderedInterval& iv, std::optional<double> s,
                          std::optional<double> q, double lhs, double rhs,
                          double tol = kDefaultBoundTol) {
    BoundReport r{std::move(id), iv.a(), iv.b(), s, q, lhs, rhs, rhs - lhs, false, tol};
    r.holds = r.margin >= -std::max(tol, tol * std::abs(rhs));
    return r;
  }

  /// margin / max(1, |rhs|); holds iff this is >= -tol.
  double normalized_margin() const noexcept { return margin / std::max(1.0, std::abs(rhs)); }
};

// ---------------------------------------------------------------------------
// Building blocks

/// Mean value of f over [lo, hi]; exact when f carries an antiderivative and lo > 0.
inline double integral_mean(const FuncHandle& f, double lo, double hi,
                            const QuadOptions& opt = {}) {
  if (f.has_exact_integral() && lo > 0.0) {
    const OrderedInterval iv(lo, hi);
    return f.exact_integral(iv) / iv.width();
  }
  return integrate(f.value, lo, hi, opt).value / (hi - lo);
}

/// (1/(b-a)) int f - ((b f(a) - a f(b))/(b-a) + f(A)) / 2, signed.
inline double bullen_type_defect_signed(const FuncHandle& f, const OrderedInterval& iv,
                                        const QuadOptions& opt = {}) {
  const double a = iv.a();
  const double b = iv.b();
  const double mixed = (b * f(a) - a * f(b)) / iv.width();
  return integral_mean(f, a, b, opt) - 0.5 * (mixed + f(arithmetic_mean(iv)));
}

/// |bullen_type_defect_signed|, the quantity bounded by the s-convex theorems.
inline double bullen_type_defect(const FuncHandle& f, const OrderedInterval& iv,
                                 const QuadOptions& opt = {}) {
  return std::abs(bullen_type_defect_signed(f, iv, opt));
}

/// Integral representation of the signed defect:
///   1/4 int_0^1 (tb+(1-t)a) f'((1-t)/2 b + (1+t)/2 a) dt
/// + 1/4 int_0^1 (ta+(1-t)b) f'((1-t)/2 a + (1+t)/2 b) dt.
inline double lemma_identity_rhs(const FuncHandle& f, const OrderedInterval& iv,
                                 const QuadOptions& opt = {}) {
  const double a = iv.a();
  const double b = iv.b();
  auto integrand = [&](double t) {
    const double lo_w = 0.5 * (1.0 - t);
    const double hi_w = 0.5 * (1.0 + t);
    return (t * b + (1.0 - t) * a) * f.derivative(lo_w * b + hi_w * a) +
           (t * a + (1.0 - t) * b) * f.derivative(lo_w * a + hi_w * b);
  };
  return 0.25 * integrate(integrand, 0.0, 1.0, opt).value;
}

// ---------------------------------------------------------------------------
// s-convex bounds

/// Weights multiplying |f'(a)| and |f'(b)| in the first-power s-convex bound.
struct EndpointWeights {
  double at_a;
  double at_b;
};

inline EndpointWeights se2_weights(const OrderedInterval& iv, SParam s) {
  const double sv = s.value();
  const double a = iv.a();
  const double b = iv.b();
  const double two_s1 = std::pow(2.0, sv + 1.0);
  const double denom = 2.0 * two_s1 * (sv + 1.0) * (sv + 2.0);  // 2^{s+2}(s+1)(s+2)
  const double big = sv * two_s1 + sv + 2.0;                     // s 2^{s+1} + s + 2
  const double small = 2.0 * two_s1 - sv - 2.0;                  // 2^{s+2} - s - 2
  return {(b * big + a * small) / denom, (a * big + b * small) / denom};
}

/// Bound on the defect when |f'| is s-convex.
inline double bound_se2(double df_a, double df_b, const OrderedInterval& iv, SParam s) {
  const auto w = se2_weights(iv, s);
  return w.at_a * df_a + w.at_b * df_b;
}

/// Hölder-inequality bound when |f'|^q is s-convex.
inline double bound_se5(double df_a, double df_b, const OrderedInterval& iv, SParam s,
                        const HolderPair& hq) {
  const double sv = s.value();
  const double q = hq.q();
  const double inv_q = 1.0 / q;
  const double heavy = std::pow(2.0, sv + 1.0) - 1.0;
  const double ga = std::pow(df_a, q);
  const double gb = std::pow(df_b, q);
  const double prefactor =
      gen_log_mean(iv, hq.p()) / (4.0 * std::pow(std::pow(2.0, sv) * (sv + 1.0), inv_q));
  return prefactor * (std::pow(gb + heavy * ga, inv_q) + std::pow(ga + heavy * gb, inv_q));
}

/// Power-mean bound when |f'|^q is s-convex; q = 1 is accepted and collapses to bound_se2.
inline double bound_se6(double df_a, double df_b, const OrderedInterval& iv, SParam s, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("power-mean bound requires q >= 1, got " + std::to_string(q));
  }
  const double sv = s.value();
  const double a = iv.a();
  const double b = iv.b();
  const double inv_q = 1.0 / q;
  const double two_s1 = std::pow(2.0, sv + 1.0);
  const double ga = std::pow(df_a, q);
  const double gb = std::pow(df_b, q);
  const double first = (a * sv + a + b) * gb + (b * (sv * two_s1 + 1.0) + a * (2.0 * two_s1 - sv - 3.0)) * ga;
  const double second = (b * sv + b + a) * ga + (a * (sv * two_s1 + 1.0) + b * (2.0 * two_s1 - sv - 3.0)) * gb;
  const double denom = std::pow(2.0, 2.0 * q + sv) * (sv + 1.0) * (sv + 2.0);
  const double prefactor = std::pow(arithmetic_mean(iv), 1.0 - inv_q) / std::pow(denom, inv_q);
  return prefactor * (std::pow(first, inv_q) + std::pow(second, inv_q));
}

enum class ConvexBoundKind { S1, S2, S3 };

/// Convex-case bounds, written from their own printed coefficients rather than
/// by specializing the s-convex evaluators.
inline double bound_ms(ConvexBoundKind kind, double df_a, double df_b, const OrderedInterval& iv,
                       std::optional<double> q = std::nullopt) {
  const double a = iv.a();
  const double b = iv.b();
  switch (kind) {
    case ConvexBoundKind::S1:
      return (5.0 / 48.0 * a + 7.0 / 48.0 * b) * df_a + (7.0 / 48.0 * a + 5.0 / 48.0 * b) * df_b;
    case ConvexBoundKind::S2: {
      if (!q) throw MissingParam("S2 bound needs q");
      const HolderPair hq(*q);
      const double inv_q = 1.0 / hq.q();
      const double ga = std::pow(df_a, hq.q());
      const double gb = std::pow(df_b, hq.q());
      return gen_log_mean(iv, hq.p()) / std::pow(4.0, 1.0 + inv_q) *
             (std::pow(gb + 3.0 * ga, inv_q) + std::pow(ga + 3.0 * gb, inv_q));
    }
    case ConvexBoundKind::S3: {
      if (!q) throw MissingParam("S3 bound needs q");
      if (!(*q >= 1.0)) throw DomainError("S3 bound requires q >= 1");
      const double inv_q = 1.0 / *q;
      const double ga = std::pow(df_a, *q);
      const double gb = std::pow(df_b, *q);
      const double prefactor =
          std::pow(arithmetic_mean(iv), 1.0 - inv_q) / (4.0 * std::pow(12.0, inv_q));
      return prefactor * (std::pow(gb * (2.0 * a + b) + ga * (4.0 * a + 5.0 * b), inv_q) +
                          std::pow(ga * (a + 2.0 * b) + gb * (5.0 * a + 4.0 * b), inv_q));
    }
  }
  throw DomainError("unknown convex bound kind");
}

// ---------------------------------------------------------------------------
// Classical inequalities

struct Triple {
  double left;
  double mid;
  double right;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// (f(A), mean of f, (f(a)+f(b))/2); nondecreasing for convex f.
inline Triple hadamard_triple(const FuncHandle& f, const OrderedInterval& iv,
                              const QuadOptions& opt = {}) {
  return {f(arithmetic_mean(iv)), integral_mean(f, iv.a(), iv.b(), opt),
          0.5 * (f(iv.a()) + f(iv.b()))};
}

/// (2^{s-1} f((u+v)/2), mean of f, (f(u)+f(v))/(s+1)) on [u, v] with 0 <= u < v.
inline Triple hadamard_s_triple(const FuncHandle& f, double u, double v, SParam s,
                                const QuadOptions& opt = {}) {
  if (!(u >= 0.0) || !(v > u)) throw DomainError("s-Hadamard triple requires 0 <= u < v");
  const double sv = s.value();
  return {std::pow(2.0, sv - 1.0) * f(0.5 * (u + v)), integral_mean(f, u, v, opt),
          (f(u) + f(v)) / (sv + 1.0)};
}

/// Right side of Bullen's inequality: (f(A) + (f(a)+f(b))/2) / 2.
inline double bullen_classic_rhs(const FuncHandle& f, const OrderedInterval& iv) {
  return 0.5 * (f(arithmetic_mean(iv)) + 0.5 * (f(iv.a()) + f(iv.b())));
}

/// |(f(a)+f(b))/2 - mean of f|.
inline double trapezoid_defect(const FuncHandle& f, const OrderedInterval& iv,
                               const QuadOptions& opt = {}) {
  return std::abs(0.5 * (f(iv.a()) + f(iv.b())) - integral_mean(f, iv.a(), iv.b(), opt));
}

enum class PriorBoundKind { DA, PP, PP_CONCAVE, ADK };

/// Right sides of the classical trapezoid-defect bounds. Checking the
/// convexity or concavity hypotheses is left to the caller.
inline double bound_prior(PriorBoundKind kind, const FuncHandle& f, const OrderedInterval& iv,
                          std::optional<double> q = std::nullopt) {
  const double a = iv.a();
  const double b = iv.b();
  const double w = iv.width();
  auto dabs = [&f](double x) { return std::abs(f.derivative(x)); };
  switch (kind) {
    case PriorBoundKind::DA:
      return w / 8.0 * (dabs(a) + dabs(b));
    case PriorBoundKind::PP: {
      if (!q) throw MissingParam("PP bound needs q");
      if (!(*q >= 1.0)) throw DomainError("PP bound requires q >= 1");
      return w / 4.0 * std::pow(0.5 * (std::pow(dabs(a), *q) + std::pow(dabs(b), *q)), 1.0 / *q);
    }
    case PriorBoundKind::PP_CONCAVE:
      return w / 4.0 * dabs(0.5 * (a + b));
    case PriorBoundKind::ADK: {
      if (!q) throw MissingParam("ADK bound needs q");
      if (!(*q >= 1.0)) throw DomainError("ADK bound requires q >= 1");
      const double factor = std::pow((*q - 1.0) / (2.0 * *q - 1.0), 1.0 - 1.0 / *q);
      return w / 4.0 * factor * (dabs(0.25 * (3.0 * a + b)) + dabs(0.25 * (a + 3.0 * b)));
    }
  }
  throw DomainError("unknown prior bound kind");
}

// ---------------------------------------------------------------------------
// Named-theorem dispatch shared by the harness and the CLI

enum class Theorem { SE2, SE5, SE6, S1, S2, S3, DA, PP, PPC, ADK, HH, HHS, BULLEN };

inline constexpr std::array<Theorem, 13> kAllTheorems = {
    Theorem::SE2, Theorem::SE5, Theorem::SE6, Theorem::S1,  Theorem::S2,  Theorem::S3,    Theorem::DA,
    Theorem::PP,  Theorem::PPC, Theorem::ADK, Theorem::HH,  Theorem::HHS, Theorem::BULLEN};

inline std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::SE2: return "se2";
    case Theorem::SE5: return "se5";
    case Theorem::SE6: return "se6";
    case Theorem::S1: return "s1";
    case Theorem::S2: return "s2";
    case Theorem::S3: return "s3";
    case Theorem::DA: return "da";
    case Theorem::PP: return "pp";
    case Theorem::PPC: return "ppc";
    case Theorem::ADK: return "adk";
    case Theorem::HH: return "hh";
    case Theorem::HHS: return "hhs";
    case Theorem::BULLEN: return "bullen";
  }
  return "?";
}

inline std::optional<Theorem> parse_theorem(std::string name) {
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Theorem t : kAllTheorems) {
    if (theorem_name(t) == name) return t;
  }
  return std::nullopt;
}

/// Whether the theorem needs an exponent q, and whether it must exceed 1.
inline bool theorem_uses_q(Theorem t) {
  return t == Theorem::SE5 || t == Theorem::SE6 || t == Theorem::S2 || t == Theorem::S3 ||
         t == Theorem::PP || t == Theorem::ADK || t == Theorem::PPC;
}

/// Evaluates one theorem on f over iv. Chain theorems (hh, hhs, bullen) yield
/// one report per inequality of the chain; the others yield a single report.
inline std::vector<BoundReport> evaluate_theorem(Theorem th, const FuncHandle& f,
                                                 const OrderedInterval& iv, SParam s,
                                                 std::optional<double> q,
                                                 double tol = kDefaultBoundTol) {
  const std::string id = theorem_name(th);
  const double dfa = std::abs(f.derivative(iv.a()));
  const double dfb = std::abs(f.derivative(iv.b()));
  auto need_q = [&]() {
    if (!q) throw MissingParam(id + " needs q");
    return *q;
  };
  auto single = [&](std::optional<double> sv, double lhs, double rhs) {
    return std::vector<BoundReport>{BoundReport::make(id, iv, sv, q, lhs, rhs, tol)};
  };
  switch (th) {
    case Theorem::SE2:
      return single(s.value(), bullen_type_defect(f, iv), bound_se2(dfa, dfb, iv, s));
    case Theorem::SE5:
      return single(s.value(), bullen_type_defect(f, iv),
                    bound_se5(dfa, dfb, iv, s, HolderPair(need_q())));
    case Theorem::SE6:
      return single(s.value(), bullen_type_defect(f, iv), bound_se6(dfa, dfb, iv, s, need_q()));
    case Theorem::S1:
      return single(std::nullopt, bullen_type_defect(f, iv),
                    bound_ms(ConvexBoundKind::S1, dfa, dfb, iv));
    case Theorem::S2:
      return single(std::nullopt, bullen_type_defect(f, iv),
                    bound_ms(ConvexBoundKind::S2, dfa, dfb, iv, need_q()));
    case Theorem::S3:
      return single(std::nullopt, bullen_type_defect(f, iv),
                    bound_ms(ConvexBoundKind::S3, dfa, dfb, iv, need_q()));
    case Theorem::DA:
      return single(std::nullopt, trapezoid_defect(f, iv), bound_prior(PriorBoundKind::DA, f, iv));
    case Theorem::PP:
      return single(std::nullopt, trapezoid_defect(f, iv),
                    bound_prior(PriorBoundKind::PP, f, iv, need_q()));
    case Theorem::PPC:
      return single(std::nullopt, trapezoid_defect(f, iv),
                    bound_prior(PriorBoundKind::PP_CONCAVE, f, iv, q));
    case Theorem::ADK:
      return single(std::nullopt, trapezoid_defect(f, iv),
                    bound_prior(PriorBoundKind::ADK, f, iv, need_q()));
    case Theorem::HH: {
      const Triple t = hadamard_triple(f, iv);
      return {BoundReport::make(id + ".left", iv, std::nullopt, q, t.left, t.mid, tol),
              BoundReport::make(id + ".right", iv, std::nullopt, q, t.mid, t.right, tol)};
    }
    case Theorem::HHS: {
      const Triple t = hadamard_s_triple(f, iv.a(), iv.b(), s);
      return {BoundReport::make(id + ".left", iv, s.value(), q, t.left, t.mid, tol),
              BoundReport::make(id + ".right", iv, s.value(), q, t.mid, t.right, tol)};
    }
    case Theorem::BULLEN: {
      const double mean = integral_mean(f, iv.a(), iv.b());
      return single(std::nullopt, mean, bullen_classic_rhs(f, iv));
    }
  }
  throw DomainError("unknown theorem");
}

}  // namespace sconvex
