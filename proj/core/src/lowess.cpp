#include "bmads/lowess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include "json.hpp"
#include <numeric>
#include <stdexcept>

#include "bmads/distance.hpp"
#include "bmads/gamma.hpp"
#include "bmads/rng.hpp"

namespace bmads {

namespace {

constexpr double kRidgeFactor = 1e-10;

struct SolveWorkspace {
  Eigen::MatrixXd z;   // p x (n+1): [1, x_i - xi]
  Eigen::MatrixXd zw;  // rows of z scaled by the weights
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  Eigen::MatrixXd y;   // outputs of the rows in z
  Eigen::VectorXd e1;
  Eigen::VectorXd u;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
};

SolveWorkspace& workspace() {
  thread_local SolveWorkspace ws;
  return ws;
}

// Solves (Z^T W Z) u = e1 from ws.a and returns B^T u with B = ws.b.
std::optional<std::vector<double>> solve_normal_system(SolveWorkspace& ws, std::size_t kk,
                                                       std::size_t q) {
  const auto k = static_cast<Eigen::Index>(kk);
  if (ws.e1.size() != k) ws.e1 = Eigen::VectorXd::Unit(k, 0);
  ws.qr.compute(ws.a);
  if (ws.qr.rank() < static_cast<Eigen::Index>(k)) {
    const double ridge = kRidgeFactor * ws.a.trace();
    if (!(ridge > 0.0) || !std::isfinite(ridge)) return std::nullopt;
    ws.a.diagonal().array() += ridge;
    ws.qr.compute(ws.a);
    if (ws.qr.rank() < static_cast<Eigen::Index>(k)) return std::nullopt;
  }
  ws.u = ws.qr.solve(ws.e1);
  std::vector<double> out(q);
  for (std::size_t o = 0; o < q; ++o) {
    out[o] = ws.b.col(static_cast<Eigen::Index>(o)).dot(ws.u);
    if (!std::isfinite(out[o])) return std::nullopt;
  }
  return out;
}


double empirical_fallback(std::span<const double> squared, std::size_t n) {
  std::vector<double> d(squared.begin(), squared.end());
  std::sort(d.begin(), d.end());
  const std::size_t k = std::min(n, d.size() - 1);  // (n+1)-th smallest, 0-based
  if (d[k] > 0.0) return std::sqrt(d[k]);
  for (double v : d)
    if (v > 0.0) return std::sqrt(v);
  return 1.0;  // every training point coincides with the query
}

}  // namespace

LocalScale local_scale_from_squared(std::span<const double> squared, std::size_t n) {
  if (squared.empty()) throw std::invalid_argument("local_scale: empty training set");
  LocalScale s;
  const double p = static_cast<double>(squared.size());
  double sum = 0.0;
  for (double v : squared) sum += v;
  s.mu = sum / p;
  double var = 0.0;
  for (double v : squared) {
    const double d = v - s.mu;
    var += d * d;
  }
  s.sigma2 = var / p;

  if (!(s.sigma2 > 0.0) || !(s.mu > 0.0)) {
    s.d_np1 = empirical_fallback(squared, n);
    return s;
  }
  const double level = std::min(static_cast<double>(n + 1) / p, kMaxQuantileLevel);
  const double shape = s.mu * s.mu / s.sigma2;
  const double scale = s.sigma2 / s.mu;
  s.d_np1 = std::sqrt(gamma_quantile(shape, scale, level));
  if (!(s.d_np1 > 0.0) || !std::isfinite(s.d_np1)) s.d_np1 = empirical_fallback(squared, n);
  return s;
}

LocalScale local_scale(const std::vector<Point>& training, std::span<const double> xi) {
  std::vector<double> sq;
  sq.reserve(training.size());
  for (const auto& x : training) sq.push_back(squared_distance(x, xi));
  return local_scale_from_squared(sq, xi.size());
}

std::optional<std::vector<double>> solve_local_regression(std::span<const double> x,
                                                          std::span<const double> y,
                                                          std::size_t n, std::size_t q,
                                                          std::span<const double> xi,
                                                          std::span<const double> w) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto p = static_cast<Eigen::Index>(w.size());
  const auto nn = static_cast<Eigen::Index>(n);
  const auto k = nn + 1;
  Eigen::Map<const RowMajor> X(x.data(), p, nn);
  Eigen::Map<const RowMajor> Y(y.data(), p, static_cast<Eigen::Index>(q));
  Eigen::Map<const Eigen::VectorXd> W(w.data(), p);
  Eigen::Map<const Eigen::RowVectorXd> center(xi.data(), nn);

  auto& ws = workspace();
  ws.z.resize(p, k);
  ws.z.col(0).setOnes();
  ws.z.rightCols(nn) = X.rowwise() - center;
  ws.zw = ws.z.array().colwise() * W.array();
  ws.a.noalias() = ws.zw.transpose() * ws.z;
  ws.b.noalias() = ws.zw.transpose() * Y;
  return solve_normal_system(ws, static_cast<std::size_t>(k), q);
}

std::size_t order_disagreements(std::span<const double> h_true, std::span<const double> f_true,
                                std::span<const double> h_pred, std::span<const double> f_pred) {
  const std::size_t p = h_true.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const bool truth = precedes(h_true[i], f_true[i], h_true[j], f_true[j]);
      const bool pred = precedes(h_pred[i], f_pred[i], h_pred[j], f_pred[j]);
      count += truth != pred ? 1 : 0;
    }
  }
  return count;
}

namespace {

struct Candidate {
  double lambda;
  KernelType kernel;
};

// Leave-one-out predictions at `rows` for several (lambda, kernel)
// candidates. For one row the weighted moments of every candidate come out
// of a single product M^T W, where M holds the per-point products z z^T
// (upper triangle) and z y^T of the row-centered design.
struct CvBatch {
  std::vector<std::vector<double>> f;  // [candidate][row]
  std::vector<std::vector<double>> h;
  std::vector<char> any_success;
};

CvBatch cross_validate_batch(std::span<const double> x, std::span<const double> y, std::size_t n,
                             std::size_t q, std::span<const std::size_t> rows,
                             std::span<const Candidate> candidates) {
  const std::size_t p = x.size() / n;
  const std::size_t k = n + 1;
  const std::size_t tri = k * (k + 1) / 2;
  const std::size_t L = tri + k * q;
  const std::size_t C = candidates.size();
  const std::size_t R = rows.size();

  CvBatch out;
  out.f.assign(C, std::vector<double>(R, kInf));
  out.h.assign(C, std::vector<double>(R, kInf));
  out.any_success.assign(C, 0);

  Eigen::MatrixXd M(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(L));
  Eigen::MatrixXd W(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(C));
  Eigen::MatrixXd moments(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(C));
  std::vector<double> sq(p), dist(p), z(k);
  auto& ws = workspace();
  ws.a.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  ws.b.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q));

  for (std::size_t r = 0; r < R; ++r) {
    const std::size_t i = rows[r];
    const auto xi = x.subspan(i * n, n);
    for (std::size_t j = 0; j < p; ++j) sq[j] = squared_distance(x.subspan(j * n, n), xi);
    const double d = local_scale_from_squared(sq, n).d_np1;
    for (std::size_t j = 0; j < p; ++j) dist[j] = std::sqrt(sq[j]) / d;

    for (std::size_t j = 0; j < p; ++j) {
      const auto row = static_cast<Eigen::Index>(j);
      z[0] = 1.0;
      for (std::size_t e = 0; e < n; ++e) z[e + 1] = x[j * n + e] - xi[e];
      std::size_t col = 0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) M(row, static_cast<Eigen::Index>(col++)) = z[a] * z[b];
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t o = 0; o < q; ++o)
          M(row, static_cast<Eigen::Index>(col++)) = z[a] * y[j * q + o];
    }
    for (std::size_t c = 0; c < C; ++c) {
      double* wc = W.col(static_cast<Eigen::Index>(c)).data();
      kernel_eval_scaled(candidates[c].kernel, candidates[c].lambda, dist, {wc, p});
      wc[i] = 0.0;
    }
    moments.noalias() = M.transpose() * W;

    for (std::size_t c = 0; c < C; ++c) {
      const double* m = moments.col(static_cast<Eigen::Index>(c)).data();
      std::size_t col = 0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
          const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
          ws.a(ia, ib) = m[col];
          ws.a(ib, ia) = m[col];
          ++col;
        }
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t o = 0; o < q; ++o)
          ws.b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(o)) = m[col++];
      if (auto cv = solve_normal_system(ws, k, q)) {
        out.any_success[c] = 1;
        out.f[c][r] = (*cv)[0];
        out.h[c][r] = aggregate_violation(std::span<const double>(*cv).subspan(1));
      }
    }
  }
  return out;
}

}  // namespace

LowessModel::LowessModel(const std::vector<Point>& inputs,
                         const std::vector<std::vector<double>>& outputs, double lambda,
                         KernelType kernel)
    : lambda_(lambda), kernel_(kernel) {
  if (inputs.empty()) throw std::invalid_argument("LowessModel: empty training set");
  if (inputs.size() != outputs.size())
    throw std::invalid_argument("LowessModel: inputs and outputs differ in length");
  if (!(lambda > 0.0)) throw std::invalid_argument("LowessModel: lambda must be positive");
  n_ = inputs.front().size();
  p_ = inputs.size();
  q_ = outputs.front().size();
  if (n_ == 0 || q_ == 0) throw std::invalid_argument("LowessModel: zero-width data");
  x_.reserve(p_ * n_);
  y_.reserve(p_ * q_);
  for (std::size_t i = 0; i < p_; ++i) {
    if (inputs[i].size() != n_ || outputs[i].size() != q_)
      throw std::invalid_argument("LowessModel: ragged training data");
    x_.insert(x_.end(), inputs[i].begin(), inputs[i].end());
    y_.insert(y_.end(), outputs[i].begin(), outputs[i].end());
  }
  xc_.resize(p_ * n_);
  yc_.resize(p_ * q_);
  for (std::size_t i = 0; i < p_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) xc_[j * p_ + i] = x_[i * n_ + j];
    for (std::size_t o = 0; o < q_; ++o) yc_[o * p_ + i] = y_[i * q_ + o];
  }
}

LocalScale LowessModel::local_scale(std::span<const double> xi) const {
  std::vector<double> sq(p_);
  for (std::size_t i = 0; i < p_; ++i) sq[i] = squared_distance(input(i), xi);
  return local_scale_from_squared(sq, n_);
}

std::vector<double> LowessModel::weights(std::span<const double> xi) const {
  std::vector<double> sq(p_);
  for (std::size_t i = 0; i < p_; ++i) sq[i] = squared_distance(input(i), xi);
  const LocalScale s = local_scale_from_squared(sq, n_);
  std::vector<double> w(p_);
  for (std::size_t i = 0; i < p_; ++i)
    w[i] = kernel_eval(kernel_, lambda_ * (std::sqrt(sq[i]) / s.d_np1));
  return w;
}

std::optional<std::vector<double>> LowessModel::predict(std::span<const double> xi) const {
  const auto p = static_cast<Eigen::Index>(p_);
  const auto nn = static_cast<Eigen::Index>(n_);
  const auto qq = static_cast<Eigen::Index>(q_);
  const auto k = nn + 1;
  Eigen::Map<const Eigen::MatrixXd> xc(xc_.data(), p, nn);
  Eigen::Map<const Eigen::MatrixXd> yc(yc_.data(), p, qq);

  thread_local Eigen::ArrayXd sq, w;
  thread_local std::vector<Eigen::Index> live;
  sq.setZero(p);
  for (Eigen::Index j = 0; j < nn; ++j)
    sq += (xc.col(j).array() - xi[static_cast<std::size_t>(j)]).square();
  const double d = local_scale_from_squared({sq.data(), p_}, n_).d_np1;
  w.resize(p);
  live.clear();
  const double scale = lambda_ / d;
  for (Eigen::Index i = 0; i < p; ++i) {
    w[i] = kernel_eval(kernel_, scale * std::sqrt(sq[i]));
    if (w[i] != 0.0) live.push_back(i);
  }

  // Rows with zero weight do not enter the normal equations, so compact
  // kernels only pay for the rows inside their support.
  auto& ws = workspace();
  const auto m = static_cast<Eigen::Index>(live.size());
  const bool all = m == p;
  ws.z.resize(m, k);
  ws.zw.resize(m, k);
  if (all) {
    ws.z.col(0).setOnes();
    for (Eigen::Index j = 0; j < nn; ++j)
      ws.z.col(j + 1) = xc.col(j).array() - xi[static_cast<std::size_t>(j)];
    ws.zw = ws.z.array().colwise() * w;
  } else {
    ws.y.resize(m, qq);
    for (Eigen::Index t = 0; t < m; ++t) {
      const Eigen::Index i = live[static_cast<std::size_t>(t)];
      ws.z(t, 0) = 1.0;
      for (Eigen::Index j = 0; j < nn; ++j)
        ws.z(t, j + 1) = xc(i, j) - xi[static_cast<std::size_t>(j)];
      ws.zw.row(t) = ws.z.row(t) * w[i];
      ws.y.row(t) = yc.row(i);
    }
  }
  // Column dot products beat a general matrix product at these shapes.
  ws.a.resize(k, k);
  ws.b.resize(k, qq);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = r; c < k; ++c) ws.a(r, c) = ws.a(c, r) = ws.zw.col(r).dot(ws.z.col(c));
    for (Eigen::Index o = 0; o < qq; ++o)
      ws.b(r, o) = all ? ws.zw.col(r).dot(yc.col(o)) : ws.zw.col(r).dot(ws.y.col(o));
  }
  return solve_normal_system(ws, n_ + 1, q_);
}

std::optional<std::vector<double>> LowessModel::predict_excluding(std::span<const double> xi,
                                                                  std::size_t excluded) const {
  auto w = weights(xi);
  if (excluded < w.size()) w[excluded] = 0.0;
  return solve_local_regression(x_, y_, n_, q_, xi, w);
}

double LowessModel::aoecv() const {
  std::vector<std::size_t> rows(p_);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return aoecv(rows);
}

double LowessModel::aoecv(std::span<const std::size_t> rows) const {
  const std::size_t r = rows.size();
  if (r == 0) return 0.0;
  std::vector<double> ht(r), ft(r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto y = output(rows[k]);
    ft[k] = y[0];
    ht[k] = aggregate_violation(y.subspan(1));
  }
  const Candidate self{lambda_, kernel_};
  const auto cv = cross_validate_batch(x_, y_, n_, q_, rows, {&self, 1});
  return static_cast<double>(order_disagreements(ht, ft, cv.h[0], cv.f[0])) /
         static_cast<double>(r * r);
}

std::vector<double> FitOptions::default_lambda_grid() {
  std::vector<double> grid(13);
  for (std::size_t k = 0; k < grid.size(); ++k)
    grid[k] = 0.1 * std::pow(100.0, static_cast<double>(k) / 12.0);
  return grid;
}

std::optional<FitResult> fit_lowess(const std::vector<Point>& inputs,
                                    const std::vector<std::vector<double>>& outputs,
                                    const FitOptions& options) {
  if (inputs.empty()) return std::nullopt;
  const std::size_t n = inputs.front().size();
  const std::size_t p = inputs.size();
  if (p < n + 2) return std::nullopt;

  // The candidate that wins is rebuilt at the end; the search itself works on
  // a throwaway model to share storage and distances across candidates.
  const LowessModel base(inputs, outputs, options.lambda_grid.empty() ? 1.0
                                                                       : options.lambda_grid[0],
                         KernelType::Gaussian);
  const std::size_t q = base.outputs();

  std::vector<std::size_t> rows(p);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  if (p > options.max_aoecv_rows) {
    Rng rng(options.subsample_seed);
    for (std::size_t k = 0; k < options.max_aoecv_rows; ++k)
      std::swap(rows[k], rows[k + rng.below(p - k)]);
    rows.resize(options.max_aoecv_rows);
    std::sort(rows.begin(), rows.end());
  }
  const std::size_t r = rows.size();

  std::vector<double> xflat, yflat;
  xflat.reserve(p * n);
  yflat.reserve(p * q);
  for (std::size_t i = 0; i < p; ++i) {
    xflat.insert(xflat.end(), inputs[i].begin(), inputs[i].end());
    yflat.insert(yflat.end(), outputs[i].begin(), outputs[i].end());
  }

  std::vector<Candidate> candidates;
  for (double lambda : options.lambda_grid)
    for (KernelType kernel : options.kernels) candidates.push_back({lambda, kernel});
  const auto cv = cross_validate_batch(xflat, yflat, n, q, rows, candidates);

  std::vector<double> ht(r), ft(r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto y = base.output(rows[k]);
    ft[k] = y[0];
    ht[k] = aggregate_violation(y.subspan(1));
  }

  std::optional<FitDiagnostics> best;
  std::size_t best_count = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!cv.any_success[c]) continue;
    const std::size_t count = order_disagreements(ht, ft, cv.h[c], cv.f[c]);
    if (!best || count < best_count) {
      best_count = count;
      best = FitDiagnostics{candidates[c].lambda, candidates[c].kernel,
                            static_cast<double>(count) / static_cast<double>(r * r), p, 0};
    }
  }
  const std::size_t tried = candidates.size();
  if (!best) return std::nullopt;
  best->candidates_tried = tried;
  return FitResult{LowessModel(inputs, outputs, best->lambda, best->kernel), *best};
}

std::string diagnostics_json(const FitDiagnostics& d) {
  nlohmann::json j;
  j["lambda"] = d.lambda;
  j["kernel"] = std::string(kernel_name(d.kernel));
  j["aoecv"] = d.aoecv;
  j["p"] = d.p;
  j["candidates"] = d.candidates_tried;
  return j.dump();
}

}  // namespace bmads
