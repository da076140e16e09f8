#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace bmads {

/// LOWESS kernel functions, all normalized so that phi(0) = 1.
enum class KernelType {
  TriCubic,
  Epanechnikov,
  BiQuadratic,
  Gaussian,
  InverseQuadratic,
  InverseMultiQuadratic,
  ExpRoot,
};

inline constexpr std::array<KernelType, 7> kAllKernels = {
    KernelType::TriCubic,         KernelType::Epanechnikov,
    KernelType::BiQuadratic,      KernelType::Gaussian,
    KernelType::InverseQuadratic, KernelType::InverseMultiQuadratic,
    KernelType::ExpRoot,
};

double kernel_eval(KernelType kernel, double d);
/// out[i] = kernel_eval(kernel, scale * d[i]).
void kernel_eval_scaled(KernelType kernel, double scale, std::span<const double> d,
                        std::span<double> out);

/// True for the kernels that vanish outside a bounded interval.
bool has_compact_support(KernelType kernel);

/// Support radius for compact kernels, +inf otherwise.
double support_radius(KernelType kernel);

std::string_view kernel_name(KernelType kernel);
std::optional<KernelType> kernel_from_name(std::string_view name);

}  // namespace bmads
