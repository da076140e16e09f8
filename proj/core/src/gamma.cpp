#include "bmads/gamma.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace bmads {

double gamma_quantile(double shape, double scale, double level) {
  if (!(shape > 0.0) || !(scale > 0.0) || !(level > 0.0) || !(level < 1.0))
    throw std::domain_error("gamma_quantile: invalid shape, scale or level");

  // Work on the standard gamma (scale 1) and rescale at the end.
  auto cdf = [shape](double x) { return boost::math::gamma_p(shape, x); };

  // Boost's inverse is accurate to a few ulps. The bracketed iteration is
  // the fallback when it throws or returns something unusable.
  double start = 0.0;
  try {
    start = boost::math::gamma_p_inv(shape, level);
  } catch (const std::exception&) {
    start = 0.0;
  }
  if (start > 0.0 && std::isfinite(start)) return scale * start;

  double lo = 0.0;
  double hi = start > 0.0 && std::isfinite(start) ? 2.0 * start : std::max(1.0, shape);
  while (cdf(hi) < level) {
    lo = hi;
    hi *= 2.0;
  }

  double x = start > lo && start < hi ? start : 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double p = cdf(x);
    if (p == level) return scale * x;
    if (p < level)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 1e-10 * hi) return scale * 0.5 * (lo + hi);

    double next = 0.5 * (lo + hi);
    const double density = boost::math::gamma_p_derivative(shape, x);
    if (density > 0.0 && std::isfinite(density)) {
      const double newton = x - (p - level) / density;
      if (std::abs(newton - x) <= 1e-12 * x) return scale * x;
      if (newton > lo && newton < hi) next = newton;
    }
    x = next;
  }
  return scale * x;
}

}  // namespace bmads
