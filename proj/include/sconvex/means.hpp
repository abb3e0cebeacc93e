#pragma once

// Arithmetic, geometric and generalized logarithmic means of 0 < a < b.

#include <cmath>
#include <string>

#include "sconvex/errors.hpp"

namespace sconvex {

/// Integration interval [a, b] with 0 < a < b.
class OrderedInterval {
 public:
  OrderedInterval(double a, double b) : a_(a), b_(b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a > 0.0) || !(b > a)) {
      throw DomainError("interval requires 0 < a < b, got a=" + std::to_string(a) +
                        " b=" + std::to_string(b));
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }

  OrderedInterval scaled(double lambda) const { return {lambda * a_, lambda * b_}; }

  friend bool operator==(const OrderedInterval&, const OrderedInterval&) = default;

 private:
  double a_;
  double b_;
};

inline double arithmetic_mean(const OrderedInterval& iv) noexcept {
  return iv.a() + 0.5 * (iv.b() - iv.a());
}

inline double geometric_mean(const OrderedInterval& iv) noexcept {
  return std::sqrt(iv.a()) * std::sqrt(iv.b());
}

/// (b^e - a^e) / (b - a), evaluated without cancellation when b is close to a.
/// Finite for every real e; zero for e = 0.
inline double power_difference_quotient(const OrderedInterval& iv, double e) noexcept {
  if (e == 0.0) return 0.0;
  const double a = iv.a();
  const double rel = iv.width() / a;
  // b^e - a^e = a^e * expm1(e * log1p((b-a)/a))
  return std::pow(a, e) * std::expm1(e * std::log1p(rel)) / iv.width();
}

/// L_p^p(a,b) = (b^{p+1} - a^{p+1}) / ((p+1)(b-a)), the mean of x^p over [a,b].
inline double gen_log_mean_pow(const OrderedInterval& iv, double p) {
  if (p == -1.0 || p == 0.0 || !std::isfinite(p)) {
    throw DomainError("generalized logarithmic mean undefined for p=" + std::to_string(p));
  }
  if (p == 1.0) return arithmetic_mean(iv);
  return power_difference_quotient(iv, p + 1.0) / (p + 1.0);
}

/// L_p(a,b); lies strictly between a and b.
inline double gen_log_mean(const OrderedInterval& iv, double p) {
  return std::pow(gen_log_mean_pow(iv, p), 1.0 / p);
}

}  // namespace sconvex
