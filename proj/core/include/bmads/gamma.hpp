#pragma once

namespace bmads {

/// Inverse CDF of the Gamma distribution with the given shape and scale.
///
/// Uses Boost's inverse of the regularized lower incomplete gamma function.
/// If that fails, falls back to bisection on P(shape, x / scale) = level with
/// Newton steps accepted only inside the bracket (relative width 1e-10).
/// level must lie in (0, 1).
double gamma_quantile(double shape, double scale, double level);

}  // namespace bmads
