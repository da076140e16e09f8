#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmads/kernels.hpp"
#include "bmads/types.hpp"

namespace bmads {

/// Gamma-fitted estimate of the distance from a query point to its
/// (n+1)-th closest training point.
struct LocalScale {
  double mu = 0.0;      ///< mean of squared distances
  double sigma2 = 0.0;  ///< population variance of squared distances
  double d_np1 = 0.0;
};

/// Quantile levels are clamped to this value so d_{n+1} stays finite.
inline constexpr double kMaxQuantileLevel = 1.0 - 1e-6;

/// Local scale from the squared distances of a query point to every
/// training point. n is the input dimension.
LocalScale local_scale_from_squared(std::span<const double> squared_distances, std::size_t n);

LocalScale local_scale(const std::vector<Point>& training, std::span<const double> xi);

/// Multi-output local linear regression (degree 1, no regularization).
///
/// Training outputs are stored row by row as [f, c_1, ..., c_m]. The model
/// is immutable after construction; predictions are safe to run concurrently.
class LowessModel {
 public:
  LowessModel(const std::vector<Point>& inputs, const std::vector<std::vector<double>>& outputs,
              double lambda, KernelType kernel);

  std::size_t dimension() const { return n_; }
  std::size_t size() const { return p_; }
  std::size_t outputs() const { return q_; }
  double lambda() const { return lambda_; }
  KernelType kernel() const { return kernel_; }

  std::span<const double> input(std::size_t i) const { return {x_.data() + i * n_, n_}; }
  std::span<const double> output(std::size_t i) const { return {y_.data() + i * q_, q_}; }

  LocalScale local_scale(std::span<const double> xi) const;
  std::vector<double> weights(std::span<const double> xi) const;

  /// [f_hat, c_hat_1, ..., c_hat_m] at xi, or nullopt when the weighted
  /// normal system stays singular after the ridge safeguard.
  std::optional<std::vector<double>> predict(std::span<const double> xi) const;

  /// Prediction at xi with training row `excluded` given zero weight.
  std::optional<std::vector<double>> predict_excluding(std::span<const double> xi,
                                                       std::size_t excluded) const;

  /// Leave-one-out value at training point i.
  std::optional<std::vector<double>> cross_validate(std::size_t i) const {
    return predict_excluding(input(i), i);
  }

  /// Aggregate order error with cross-validation over all rows.
  double aoecv() const;

  /// Same metric restricted to the given training rows.
  double aoecv(std::span<const std::size_t> rows) const;

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::size_t q_ = 0;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> xc_;  // column-major copies for predict()
  std::vector<double> yc_;
  double lambda_ = 1.0;
  KernelType kernel_ = KernelType::Gaussian;
};

/// Solves the local weighted least-squares problem at xi for explicit
/// weights and returns the intercept row (the prediction). Exposed for the
/// hyperparameter search, which reuses distances across candidates.
std::optional<std::vector<double>> solve_local_regression(std::span<const double> x,
                                                          std::span<const double> y,
                                                          std::size_t n, std::size_t q,
                                                          std::span<const double> xi,
                                                          std::span<const double> w);

/// Number of strictly ordered pairs whose order flips between true and
/// predicted (h, f). Failed predictions are passed as +inf.
std::size_t order_disagreements(std::span<const double> h_true, std::span<const double> f_true,
                                std::span<const double> h_pred, std::span<const double> f_pred);

struct FitOptions {
  std::vector<double> lambda_grid = default_lambda_grid();
  std::vector<KernelType> kernels{kAllKernels.begin(), kAllKernels.end()};
  std::size_t max_aoecv_rows = 200;
  std::uint64_t subsample_seed = 0x10e55;

  /// 13 log-spaced values from 0.1 to 10.
  static std::vector<double> default_lambda_grid();
};

struct FitDiagnostics {
  double lambda = 0.0;
  KernelType kernel = KernelType::Gaussian;
  double aoecv = 1.0;
  std::size_t p = 0;
  std::size_t candidates_tried = 0;
};

struct FitResult {
  LowessModel model;
  FitDiagnostics diagnostics;
};

/// Picks (lambda, kernel) minimizing the AOECV. Ties keep the smallest
/// lambda, then the earliest kernel. Returns nullopt when p < n + 2 or
/// every candidate fails on every cross-validation row.
std::optional<FitResult> fit_lowess(const std::vector<Point>& inputs,
                                    const std::vector<std::vector<double>>& outputs,
                                    const FitOptions& options = {});

std::string diagnostics_json(const FitDiagnostics& d);

}  // namespace bmads
