#pragma once

// Independent Gamma quantile: regularized lower incomplete gamma by series
// or continued fraction, inverted by plain bisection.

#include <cmath>

namespace ref {

inline double lower_gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a, sum = term;
    for (int k = 1; k < 100000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(log_prefix);
  }
  // Modified Lentz for the upper tail Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 - std::exp(log_prefix) * h;
}

inline double gamma_quantile_bisect(double shape, double scale, double level) {
  double lo = 0.0, hi = 1.0;
  while (lower_gamma_p(shape, hi) < level) hi *= 2.0;
  for (int k = 0; k < 400 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (lower_gamma_p(shape, mid) < level ? lo : hi) = mid;
  }
  return scale * 0.5 * (lo + hi);
}

}  // namespace ref
