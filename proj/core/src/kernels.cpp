#include "bmads/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bmads {

namespace {
constexpr double kTriCubicSupport = 140.0 / 162.0;
constexpr double kEpanechnikovSupport = 3.0 / 4.0;
constexpr double kBiQuadraticSupport = 15.0 / 16.0;
// Brings the inverse multi-quadratic close (in L2) to the inverse quadratic.
constexpr double kInverseMultiQuadraticScale = 52.015;
}  // namespace

double kernel_eval(KernelType kernel, double d) {
  const double a = std::abs(d);
  switch (kernel) {
    case KernelType::TriCubic: {
      if (a >= kTriCubicSupport) return 0.0;
      const double t = (162.0 / 140.0) * a;
      const double u = std::max(0.0, 1.0 - t * t * t);
      return u * u * u;
    }
    case KernelType::Epanechnikov:
      if (a >= kEpanechnikovSupport) return 0.0;
      return std::max(0.0, 1.0 - (16.0 / 9.0) * a * a);
    case KernelType::BiQuadratic: {
      if (a >= kBiQuadraticSupport) return 0.0;
      const double t = (16.0 / 15.0) * a;
      const double u = std::max(0.0, 1.0 - t * t);
      return u * u;
    }
    case KernelType::Gaussian:
      return std::exp(-std::numbers::pi * a * a);
    case KernelType::InverseQuadratic:
      return 1.0 / (1.0 + std::numbers::pi * std::numbers::pi * a * a);
    case KernelType::InverseMultiQuadratic:
      return 1.0 / std::sqrt(1.0 + kInverseMultiQuadraticScale * a * a);
    case KernelType::ExpRoot:
      return std::exp(-2.0 * std::sqrt(a));
  }
  return 0.0;
}

void kernel_eval_scaled(KernelType kernel, double scale, std::span<const double> d,
                        std::span<double> out) {
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = kernel_eval(kernel, scale * d[i]);
}

bool has_compact_support(KernelType kernel) {
  return kernel == KernelType::TriCubic || kernel == KernelType::Epanechnikov ||
         kernel == KernelType::BiQuadratic;
}

double support_radius(KernelType kernel) {
  switch (kernel) {
    case KernelType::TriCubic: return kTriCubicSupport;
    case KernelType::Epanechnikov: return kEpanechnikovSupport;
    case KernelType::BiQuadratic: return kBiQuadraticSupport;
    default: return std::numeric_limits<double>::infinity();
  }
}

std::string_view kernel_name(KernelType kernel) {
  switch (kernel) {
    case KernelType::TriCubic: return "tri_cubic";
    case KernelType::Epanechnikov: return "epanechnikov";
    case KernelType::BiQuadratic: return "bi_quadratic";
    case KernelType::Gaussian: return "gaussian";
    case KernelType::InverseQuadratic: return "inverse_quadratic";
    case KernelType::InverseMultiQuadratic: return "inverse_multi_quadratic";
    case KernelType::ExpRoot: return "exp_root";
  }
  return "unknown";
}

std::optional<KernelType> kernel_from_name(std::string_view name) {
  for (KernelType k : kAllKernels)
    if (kernel_name(k) == name) return k;
  return std::nullopt;
}

}  // namespace bmads
