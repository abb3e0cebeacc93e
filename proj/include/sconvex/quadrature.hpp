#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature.
//
// The panel with the largest error estimate is bisected until the summed
// estimate meets max(abs_tol, rel_tol * |value|). Panels are kept in a flat
// list scanned in a fixed order, so results are bit-reproducible.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sconvex/errors.hpp"

namespace sconvex {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  int max_depth = 60;
  std::size_t max_panels = 20000;
};

namespace detail {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
};

template <typename F>
double checked_eval(F& f, double x) {
  const double y = static_cast<double>(f(x));
  if (!std::isfinite(y)) {
    throw EvalError("integrand is not finite at x=" + std::to_string(x));
  }
  return y;
}

template <typename F>
Panel gauss_kronrod_15(F& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked_eval(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = checked_eval(f, center - dx) + checked_eval(f, center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

}  // namespace detail

/// Integrates f over [lo, hi].
///
/// Throws DomainError for lo >= hi or non-positive tolerances, EvalError when f
/// is non-finite at a node, and DepthExhausted when a panel would be bisected
/// beyond `max_depth` levels (or the panel budget runs out).
template <typename F>
QuadResult integrate(F&& f, double lo, double hi, const QuadOptions& opt = {}) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("integrate requires finite lo < hi");
  }
  if (!(opt.abs_tol > 0.0) || !(opt.rel_tol > 0.0)) {
    throw DomainError("integrate requires positive tolerances");
  }

  std::vector<detail::Panel> panels{detail::gauss_kronrod_15(f, lo, hi, 0)};
  std::size_t evaluations = 15;
  double value = panels.front().value;
  double error = panels.front().error;

  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
    // First panel with the largest estimate; the scan order makes ties deterministic.
    const auto worst_it = std::max_element(
        panels.begin(), panels.end(),
        [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; });
    const detail::Panel worst = *worst_it;
    if (worst.depth >= opt.max_depth || panels.size() >= opt.max_panels) {
      throw DepthExhausted("quadrature did not converge on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "], error estimate " + std::to_string(error));
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    *worst_it = detail::gauss_kronrod_15(f, worst.lo, mid, worst.depth + 1);
    panels.push_back(detail::gauss_kronrod_15(f, mid, worst.hi, worst.depth + 1));
    evaluations += 30;

    // Re-summed from scratch to avoid drift from incremental updates.
    value = 0.0;
    error = 0.0;
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
  }
  return {value, error, evaluations};
}

}  // namespace sconvex
