#include "bmads/problems.hpp"

#include <cmath>
#include <numbers>

namespace bmads {

// Constraints are written as g(x) <= 0. Stress, volume and buckling limits
// are divided by their allowable value so every constraint is O(1).

BlackboxOutput eval_tcsd(std::span<const double> x) {
  const double d = x[0];
  const double D = x[1];
  const double N = x[2];
  BlackboxOutput out;
  out.f = (N + 2.0) * D * d * d;
  const double d2 = d * d;
  const double d3 = d2 * d;
  const double d4 = d3 * d;
  out.c = {
      1.0 - D * D * D * N / (71785.0 * d4),                                        // deflection
      (4.0 * D * D - d * D) / (12566.0 * (D * d3 - d4)) + 1.0 / (5108.0 * d2) - 1.0,  // shear
      1.0 - 140.45 * d / (D * D * N),                                              // surge frequency
      (D + d) / 1.5 - 1.0,                                                         // outer diameter
  };
  return out;
}

BlackboxOutput eval_vessel(std::span<const double> x) {
  const double ts = x[0];
  const double th = x[1];
  const double r = x[2];
  const double len = x[3];
  constexpr double pi = std::numbers::pi;
  BlackboxOutput out;
  out.f = 0.6224 * ts * r * len + 1.7781 * th * r * r + 3.1661 * ts * ts * len +
          19.84 * ts * ts * r;
  out.c = {
      -ts + 0.0193 * r,
      -th + 0.00954 * r,
      1.0 - (pi * r * r * len + 4.0 / 3.0 * pi * r * r * r) / 1296000.0,
      len / 240.0 - 1.0,
  };
  return out;
}

BlackboxOutput eval_welded(std::span<const double> x) {
  const double h = x[0];
  const double l = x[1];
  const double t = x[2];
  const double b = x[3];
  constexpr double load = 6000.0;
  constexpr double span = 14.0;

  const double tau_p = load / (std::numbers::sqrt2 * h * l);
  const double moment = load * (span + l / 2.0);
  const double half = (h + t) / 2.0;
  const double radius = std::sqrt(l * l / 4.0 + half * half);
  const double polar = 2.0 * (h * l / std::numbers::sqrt2 * (l * l / 12.0 + half * half));
  const double tau_pp = moment * radius / polar;
  const double tau =
      std::sqrt(tau_p * tau_p + 2.0 * tau_p * tau_pp * l / (2.0 * radius) + tau_pp * tau_pp);
  const double sigma = 6.0 * load * span / (b * t * t);
  const double delta = 2.1952 / (t * t * t * b);
  const double buckling = 64746.022 * (1.0 - 0.0282346 * t) * t * b * b * b;

  BlackboxOutput out;
  out.f = 1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l);
  out.c = {
      tau / 13600.0 - 1.0,
      sigma / 30000.0 - 1.0,
      h - b,
      (0.10471 * h * h + 0.04811 * t * b * (14.0 + l)) / 5.0 - 1.0,
      delta / 0.25 - 1.0,
      1.0 - buckling / load,
  };
  return out;
}

namespace {

ProblemCatalogEntry make_entry(std::string name, std::vector<double> lower, std::vector<double> upper,
                               std::size_t m, BlackboxOutput (*fn)(std::span<const double>),
                               double best_f, Point best_x) {
  ProblemCatalogEntry e;
  e.spec.name = std::move(name);
  e.spec.n = lower.size();
  e.spec.m = m;
  e.spec.lower = std::move(lower);
  e.spec.upper = std::move(upper);
  e.spec.integer_mask.assign(e.spec.n, false);
  e.spec.evaluator = [fn](std::span<const double> x) -> std::optional<BlackboxOutput> {
    return fn(x);
  };
  e.best_known_f = best_f;
  e.best_known_x = std::move(best_x);
  return e;
}

}  // namespace

ProblemCatalogEntry make_tcsd() {
  return make_entry("tcsd", {0.05, 0.25, 2.0}, {2.0, 1.3, 15.0}, 4, &eval_tcsd, 0.0126652,
                    {0.051686696913218, 0.356660815351066, 11.292312882259289});
}

ProblemCatalogEntry make_vessel() {
  return make_entry("vessel", {0.0625, 0.0625, 10.0, 10.0}, {6.1875, 6.1875, 200.0, 200.0}, 4,
                    &eval_vessel, 5885.332,
                    {0.778168641330718, 0.384649162605973, 40.319618721803231,
                     199.999999998822659});
}

ProblemCatalogEntry make_welded() {
  return make_entry("welded", {0.1, 0.1, 0.1, 0.1}, {2.0, 10.0, 10.0, 2.0}, 6, &eval_welded,
                    2.38096,
                    {0.244368407428265, 6.217496713101864, 8.291517255567012,
                     0.244368666449562});
}

std::optional<ProblemCatalogEntry> find_problem(std::string_view name) {
  if (name == "tcsd") return make_tcsd();
  if (name == "vessel") return make_vessel();
  if (name == "welded") return make_welded();
  return std::nullopt;
}

std::vector<std::string> problem_names() { return {"tcsd", "vessel", "welded"}; }

}  // namespace bmads
