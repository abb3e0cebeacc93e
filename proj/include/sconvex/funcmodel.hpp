#pragma once

// Function representations, the grid certifier for s-convexity in the second
// sense, and the generator of certified test instances.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sconvex/errors.hpp"
#include "sconvex/means.hpp"
#include "sconvex/quadrature.hpp"

namespace sconvex {

/// Exponent s in (0, 1].
class SParam {
 public:
  explicit SParam(double s) : s_(s) {
    if (!(s > 0.0 && s <= 1.0)) {
      throw DomainError("s must lie in (0, 1], got " + std::to_string(s));
    }
  }
  double value() const noexcept { return s_; }
  operator double() const noexcept { return s_; }

 private:
  double s_;
};

struct PowerTerm {
  double coeff;
  double exponent;
  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// sum_i c_i x^{p_i}, evaluated on (0, inf).
class PowerSum {
 public:
  PowerSum() = default;
  explicit PowerSum(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      if (!std::isfinite(t.coeff) || !std::isfinite(t.exponent)) {
        throw DomainError("power sum terms must be finite");
      }
    }
  }
  PowerSum(std::initializer_list<PowerTerm> terms) : PowerSum(std::vector<PowerTerm>(terms)) {}

  static PowerSum constant(double c) { return PowerSum{{c, 0.0}}; }
  static PowerSum monomial(double c, double p) { return PowerSum{{c, p}}; }

  const std::vector<PowerTerm>& terms() const noexcept { return terms_; }

  double operator()(double x) const noexcept {
    double sum = 0.0;
    for (const auto& t : terms_) {
      if (t.exponent == 0.0) {
        sum += t.coeff;
      } else if (t.exponent == 1.0) {
        sum += t.coeff * x;
      } else {
        sum += t.coeff * std::pow(x, t.exponent);
      }
    }
    return sum;
  }

  /// Term-wise derivative; constant terms drop out.
  PowerSum derivative() const {
    std::vector<PowerTerm> out;
    for (const auto& t : terms_) {
      if (t.exponent != 0.0) out.push_back({t.coeff * t.exponent, t.exponent - 1.0});
    }
    return PowerSum(std::move(out));
  }

  /// Term-wise antiderivative with zero constant of integration.
  PowerSum antiderivative() const {
    std::vector<PowerTerm> out;
    for (const auto& t : terms_) {
      if (t.exponent == -1.0) throw ExponentError("no power antiderivative for exponent -1");
      out.push_back({t.coeff / (t.exponent + 1.0), t.exponent + 1.0});
    }
    return PowerSum(std::move(out));
  }

  PowerSum scaled(double k) const {
    auto out = terms_;
    for (auto& t : out) t.coeff *= k;
    return PowerSum(std::move(out));
  }

  bool all_coefficients_nonnegative() const noexcept {
    for (const auto& t : terms_) {
      if (t.coeff < 0.0) return false;
    }
    return true;
  }

  /// Human-readable form using the CLI expression grammar.
  std::string describe() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) os << " + ";
      os << terms_[i].coeff;
      if (terms_[i].exponent != 0.0) os << "*x^" << terms_[i].exponent;
    }
    return os.str();
  }

  friend bool operator==(const PowerSum&, const PowerSum&) = default;

 private:
  std::vector<PowerTerm> terms_;
};

/// Exact integral of ps over iv: sum c_i (b^{p_i+1} - a^{p_i+1}) / (p_i+1).
inline double powersum_integral(const PowerSum& ps, const OrderedInterval& iv) {
  double sum = 0.0;
  for (const auto& t : ps.terms()) {
    if (t.exponent == -1.0) throw ExponentError("no power antiderivative for exponent -1");
    sum += t.coeff * power_difference_quotient(iv, t.exponent + 1.0) / (t.exponent + 1.0);
  }
  return sum * iv.width();
}

/// Differentiable function with its derivative, and an exact integral when known.
struct FuncHandle {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(const OrderedInterval&)> exact_integral;  // may be empty
  std::string descriptor;

  double operator()(double x) const { return value(x); }
  bool has_exact_integral() const noexcept { return static_cast<bool>(exact_integral); }

  static FuncHandle from_power_sum(const PowerSum& ps) {
    auto f = std::make_shared<const PowerSum>(ps);
    auto df = std::make_shared<const PowerSum>(ps.derivative());
    FuncHandle h;
    h.value = [f](double x) { return (*f)(x); };
    h.derivative = [df](double x) { return (*df)(x); };
    bool integrable = true;
    for (const auto& t : ps.terms()) integrable = integrable && t.exponent != -1.0;
    if (integrable) {
      h.exact_integral = [f](const OrderedInterval& iv) { return powersum_integral(*f, iv); };
    }
    h.descriptor = ps.describe();
    return h;
  }

  /// Same function with the exact integral stripped, forcing quadrature.
  FuncHandle without_exact_integral() const {
    FuncHandle h = *this;
    h.exact_integral = nullptr;
    return h;
  }
};

struct GridCounts {
  int x = 33;
  int y = 33;
  int t = 21;
};

struct Counterexample {
  double x;
  double y;
  double t;
  double lhs;
  double rhs;
};

struct CertResult {
  bool certified = false;
  std::optional<Counterexample> counterexample;
  std::size_t samples_checked = 0;
};

inline constexpr double kCertifierTolerance = 1e-10;

/// Checks phi(tx + (1-t)y) <= t^s phi(x) + (1-t)^s phi(y) for x, y on a uniform
/// grid of [lo, hi] and t on a uniform grid of [0, 1]. The reported
/// counterexample is the worst violation found.
///
/// A sampling check, not a proof. Triples (y, x, 1-t) duplicate (x, y, t) on
/// the symmetric t grid and are skipped, but still counted as checked.
template <typename Phi>
CertResult certify_s_convex(const Phi& phi, SParam s, double lo, double hi,
                            const GridCounts& grid = {}) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("certifier requires 0 < lo < hi");
  if (grid.x < 8 || grid.y < 8 || grid.t < 8) {
    throw DomainError("certifier grid needs at least 8 points per axis");
  }
  auto eval = [&phi](double z) {
    const double v = static_cast<double>(phi(z));
    if (!std::isfinite(v)) throw EvalError("phi is not finite at " + std::to_string(z));
    return v;
  };

  // The symmetric shortcut below needs identical x and y grids.
  const bool symmetric = grid.x == grid.y;
  auto node = [lo, hi](int i, int n) {
    return i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };
  std::vector<double> xs(grid.x), phix(grid.x), ys(grid.y), phiy(grid.y);
  for (int i = 0; i < grid.x; ++i) phix[i] = eval(xs[i] = node(i, grid.x));
  for (int j = 0; j < grid.y; ++j) phiy[j] = eval(ys[j] = node(j, grid.y));
  std::vector<double> ts(grid.t), wt(grid.t), w1t(grid.t);
  for (int k = 0; k < grid.t; ++k) {
    ts[k] = static_cast<double>(k) / (grid.t - 1);
    wt[k] = std::pow(ts[k], s.value());
    w1t[k] = std::pow(1.0 - ts[k], s.value());
  }

  CertResult result;
  double worst_excess = 0.0;
  for (int i = 0; i < grid.x; ++i) {
    for (int j = 0; j < grid.y; ++j) {
      if (symmetric && j < i) continue;
      for (int k = 0; k < grid.t; ++k) {
        const double z = ts[k] * xs[i] + (1.0 - ts[k]) * ys[j];
        const double lhs = (k == 0) ? phiy[j] : (k == grid.t - 1) ? phix[i] : eval(z);
        const double rhs = wt[k] * phix[i] + w1t[k] * phiy[j];
        const double excess = (lhs - rhs) - kCertifierTolerance * (1.0 + std::abs(rhs));
        if (excess > worst_excess) {
          worst_excess = excess;
          result.counterexample = Counterexample{xs[i], ys[j], ts[k], lhs, rhs};
        }
      }
    }
  }
  result.samples_checked = static_cast<std::size_t>(grid.x) * grid.y * grid.t;
  result.certified = !result.counterexample.has_value();
  return result;
}

/// Grid check that phi is concave on [lo, hi] (convexity of -phi).
template <typename Phi>
CertResult certify_concave(const Phi& phi, double lo, double hi, const GridCounts& grid = {}) {
  return certify_s_convex([&phi](double z) { return -static_cast<double>(phi(z)); }, SParam(1.0),
                          lo, hi, grid);
}

struct GeneratorConfig {
  double lo_min = 0.1;
  double hi_max = 10.0;
  int max_terms = 3;
  /// Probability (for s < 1) of drawing f' = c x^s, which is s-convex but not convex.
  double s_power_fraction = 0.2;
  GridCounts grid{};
};

/// A generated function whose derivative magnitude passed certification.
struct CertifiedInstance {
  FuncHandle f;
  PowerSum f_power;       // f as a power sum
  PowerSum df_power;      // f' as a power sum
  OrderedInterval iv;
  double s;
  CertResult certificate;  // for |f'| at s on iv
  bool convex_derivative;  // false for the f' = c x^s family
};

/// SplitMix64: small, portable, and fully specified, so instances depend only on the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) noexcept { return static_cast<std::size_t>(uniform() * n); }

 private:
  std::uint64_t state_;
};

/// Draws an interval lo_min <= a < b <= hi_max with b - a at least 1% of the range.
inline OrderedInterval sample_interval(SplitMix64& rng, double lo_min, double hi_max) {
  const double min_width = 0.01 * (hi_max - lo_min);
  const double a = rng.uniform(lo_min, hi_max - min_width);
  const double b = rng.uniform(a + min_width, hi_max);
  return {a, b};
}

/// Wraps f' as an instance: f is its antiderivative, and |f'| must certify as
/// s-convex on iv.
inline CertifiedInstance make_certified_instance(const PowerSum& derivative,
                                                 const OrderedInterval& iv, SParam s,
                                                 const GridCounts& grid = {}) {
  PowerSum f = derivative.antiderivative();
  auto abs_df = [&derivative](double x) { return std::abs(derivative(x)); };
  CertResult cert = certify_s_convex(abs_df, s, iv.a(), iv.b(), grid);
  if (!cert.certified) {
    throw GenerationError("derivative " + derivative.describe() + " failed s-convexity at s=" +
                          std::to_string(s.value()));
  }
  bool convex = derivative.all_coefficients_nonnegative();
  for (const auto& t : derivative.terms()) {
    const bool convex_exponent = (t.exponent > -1.0 && t.exponent <= 0.0) || t.exponent >= 1.0;
    convex = convex && convex_exponent;
  }
  return {FuncHandle::from_power_sum(f), f, derivative, iv, s.value(), cert, convex};
}

/// Deterministic certified instance for one seed.
///
/// f' is a nonnegative sum of up to max_terms powers with exponents in
/// (-1, 0] or [1, 3], so |f'| and |f'|^q (q >= 1) are convex, hence s-convex
/// for every s. With probability s_power_fraction (only when s < 1) f' is
/// c x^s instead.
inline CertifiedInstance gen_certified_instance(std::uint64_t seed, SParam s,
                                                const GeneratorConfig& cfg = {}) {
  if (!(cfg.lo_min > 0.0) || !(cfg.hi_max > cfg.lo_min) || cfg.max_terms < 1) {
    throw DomainError("generator config requires 0 < lo_min < hi_max and max_terms >= 1");
  }
  SplitMix64 rng(seed);
  const OrderedInterval iv = sample_interval(rng, cfg.lo_min, cfg.hi_max);

  std::vector<PowerTerm> terms;
  const double pick = rng.uniform();
  if (s.value() < 1.0 && pick < cfg.s_power_fraction) {
    terms.push_back({rng.uniform(0.5, 2.0), s.value()});
  } else {
    const int count = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(cfg.max_terms)));
    for (int i = 0; i < count; ++i) {
      const double coeff = rng.uniform(0.1, 2.0);
      const double exponent = rng.uniform() < 0.5 ? -0.95 * rng.uniform() : rng.uniform(1.0, 3.0);
      terms.push_back({coeff, exponent});
    }
  }
  return make_certified_instance(PowerSum(std::move(terms)), iv, s, cfg.grid);
}

}  // namespace sconvex
