#include "bmads/scaling.hpp"

#include <cmath>

namespace bmads {

Scaling::Scaling(const ProblemSpec& spec) {
  const std::size_t n = spec.n;
  offset_.resize(n);
  range_.resize(n);
  bounds_.lower.resize(n);
  bounds_.upper.resize(n);
  bounds_.granularity.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = spec.lower[i];
    const double hi = spec.upper[i];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      offset_[i] = lo;
      range_[i] = hi > lo ? hi - lo : 1.0;
    } else if (std::isfinite(lo)) {
      offset_[i] = lo;
      range_[i] = kUnboundedRange;
    } else if (std::isfinite(hi)) {
      offset_[i] = hi - kUnboundedRange;
      range_[i] = kUnboundedRange;
    } else {
      offset_[i] = -kUnboundedRange / 2.0;
      range_[i] = kUnboundedRange;
    }
    bounds_.lower[i] = std::isfinite(lo) ? (lo - offset_[i]) / range_[i] : -kInf;
    bounds_.upper[i] = std::isfinite(hi) ? (hi - offset_[i]) / range_[i] : kInf;
    if (!spec.integer_mask.empty() && spec.integer_mask[i]) bounds_.granularity[i] = 1.0 / range_[i];
  }
}

Point Scaling::to_unit(std::span<const double> x) const {
  Point u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = (x[i] - offset_[i]) / range_[i];
  return u;
}

Point Scaling::from_unit(std::span<const double> u) const {
  Point x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = offset_[i] + u[i] * range_[i];
  return x;
}

std::vector<double> Scaling::sample_lower() const {
  std::vector<double> v(offset_.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::isfinite(bounds_.lower[i]) ? bounds_.lower[i] : 0.0;
  return v;
}

std::vector<double> Scaling::sample_upper() const {
  std::vector<double> v(offset_.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::isfinite(bounds_.upper[i]) ? bounds_.upper[i] : 1.0;
  return v;
}

}  // namespace bmads
