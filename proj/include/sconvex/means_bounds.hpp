#pragma once

// Special-means forms of the defect for f = x^s and f = x^{1-s}/(1-s), and the
// matching right sides obtained by substituting |f'| into the s-convex bounds.

#include <cmath>
#include <optional>
#include <string>

#include "sconvex/bounds.hpp"
#include "sconvex/errors.hpp"
#include "sconvex/funcmodel.hpp"
#include "sconvex/means.hpp"

namespace sconvex {

/// |L_s^s + ((s-1) G^2 L_{s-2}^{s-2} - A^s) / 2|, the defect of x^s.
/// (s-1) L_{s-2}^{s-2} is taken as (b^{s-1} - a^{s-1})/(b-a), finite at s = 1.
inline double prop_power_lhs(const OrderedInterval& iv, SParam s) {
  const double sv = s.value();
  const double g = geometric_mean(iv);
  const double mixed = g * g * power_difference_quotient(iv, sv - 1.0);
  return std::abs(gen_log_mean_pow(iv, sv) +
                  0.5 * (mixed - std::pow(arithmetic_mean(iv), sv)));
}

/// Defect of x^{1-s}/(1-s) in mean form:
/// |L_{1-s}^{1-s}/(1-s) - (s G^2 L_{-1-s}^{-1-s} + A^{1-s}) / (2(1-s))|, 0 < s < 1.
inline double prop_recip_lhs(const OrderedInterval& iv, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("reciprocal-power family requires 0 < s < 1, got " + std::to_string(s));
  }
  const double g = geometric_mean(iv);
  const double one_minus = 1.0 - s;
  const double mean = gen_log_mean_pow(iv, one_minus) / one_minus;
  const double mixed = s * g * g * gen_log_mean_pow(iv, -1.0 - s);
  return std::abs(mean - (mixed + std::pow(arithmetic_mean(iv), one_minus)) / (2.0 * one_minus));
}

enum class PropKind { SE3, SE4, SE7, SE8, SE9, SE10 };

inline std::string prop_name(PropKind k) {
  switch (k) {
    case PropKind::SE3: return "se3";
    case PropKind::SE4: return "se4";
    case PropKind::SE7: return "se7";
    case PropKind::SE8: return "se8";
    case PropKind::SE9: return "se9";
    case PropKind::SE10: return "se10";
  }
  return "?";
}

inline bool prop_is_reciprocal(PropKind k) {
  return k == PropKind::SE4 || k == PropKind::SE9 || k == PropKind::SE10;
}

/// Right side of a special-means proposition, by substitution into the
/// s-convex bounds: |f'(x)| = s x^{s-1} for the power family and x^{-s} for
/// the reciprocal family.
inline double prop_rhs(PropKind kind, const OrderedInterval& iv, SParam s,
                       std::optional<double> q = std::nullopt) {
  const double sv = s.value();
  const bool recip = prop_is_reciprocal(kind);
  if (recip && !(sv < 1.0)) {
    throw DomainError(prop_name(kind) + " requires s < 1");
  }
  const double dfa = recip ? std::pow(iv.a(), -sv) : sv * std::pow(iv.a(), sv - 1.0);
  const double dfb = recip ? std::pow(iv.b(), -sv) : sv * std::pow(iv.b(), sv - 1.0);
  switch (kind) {
    case PropKind::SE3:
    case PropKind::SE4:
      return bound_se2(dfa, dfb, iv, s);
    case PropKind::SE8:
    case PropKind::SE9:
      if (!q) throw MissingParam(prop_name(kind) + " needs q");
      return bound_se5(dfa, dfb, iv, s, HolderPair(*q));
    case PropKind::SE7:
    case PropKind::SE10:
      if (!q) throw MissingParam(prop_name(kind) + " needs q");
      return bound_se6(dfa, dfb, iv, s, *q);
  }
  throw DomainError("unknown proposition");
}

inline double prop_lhs(PropKind kind, const OrderedInterval& iv, SParam s) {
  return prop_is_reciprocal(kind) ? prop_recip_lhs(iv, s.value()) : prop_power_lhs(iv, s);
}

/// Numerator a*c_a + b*c_b of an endpoint weight, as coefficient functions of s.
struct LinearForm {
  double coef_a;
  double coef_b;
  double at(const OrderedInterval& iv) const noexcept {
    return coef_a * iv.a() + coef_b * iv.b();
  }
};

/// Numerator of the |f'(a)| weight of the first-power bound:
/// b(s 2^{s+1} + s + 2) + a(2^{s+2} - s - 2).
inline LinearForm se4_substituted_numerator(double s) {
  return {std::pow(2.0, s + 2.0) - s - 2.0, s * std::pow(2.0, s + 1.0) + s + 2.0};
}

/// The same numerator as displayed in the reciprocal-family proposition:
/// a(s - 2^{s+2} + 2) - b(s 2^{s+1} + s + 2).
inline LinearForm se4_printed_numerator(double s) {
  return {s - std::pow(2.0, s + 2.0) + 2.0, -(s * std::pow(2.0, s + 1.0) + s + 2.0)};
}

/// Second (|f'(a)| = a^{-s}) term of the reciprocal-family first-power bound,
/// evaluated both by substitution and as printed.
struct Se4Discrepancy {
  double substituted_term;
  double printed_term;
  /// printed + substituted; zero when the printed term is the exact negative.
  double sum() const noexcept { return printed_term + substituted_term; }
};

inline Se4Discrepancy se4_second_term(const OrderedInterval& iv, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("se4 requires 0 < s < 1");
  const double scale =
      1.0 / (std::pow(2.0, s + 2.0) * std::pow(iv.a(), s) * (s + 1.0) * (s + 2.0));
  return {scale * se4_substituted_numerator(s).at(iv), scale * se4_printed_numerator(s).at(iv)};
}

/// Right side of the reciprocal-family first-power bound exactly as displayed.
/// Kept for reporting the sign discrepancy; never asserted as a bound.
inline double prop_se4_as_printed(const OrderedInterval& iv, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("se4 requires 0 < s < 1");
  const double denom = std::pow(2.0, s + 2.0) * (s + 1.0) * (s + 2.0);
  // |f'(b)| = b^{-s} weight; its numerator is the a <-> b mirror of the substituted one.
  const LinearForm mirrored = se4_substituted_numerator(s);
  const double first = (mirrored.coef_b * iv.a() + mirrored.coef_a * iv.b()) /
                       (denom * std::pow(iv.b(), s));
  return first + se4_second_term(iv, s).printed_term;
}

}  // namespace sconvex
