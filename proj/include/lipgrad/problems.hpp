#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lipgrad/problem.hpp"

namespace lipgrad {

enum class Difficulty { simple, hard };

const char *to_string(Difficulty d);
Difficulty parse_difficulty(const std::string &text);

/// Parameters of a family of generated test functions on [-1, 1]^N.
///
/// Each function is a paraboloid ||x - T||^2 + paraboloid_min whose shape is
/// replaced inside disjoint balls by cubic bumps that keep it continuously
/// differentiable and plant a local minimum at each ball center. The first
/// ball holds the global minimum global_value, at distance global_distance
/// from T, with radius global_radius. Other local minima are at least
/// value_gap above it. "hard" uses a smaller global basin and a smaller gap.
struct ProblemClass {
  std::uint64_t seed = 1;
  std::size_t dimension = 2;
  std::size_t count = 100;
  Difficulty difficulty = Difficulty::simple;
  std::size_t num_minima = 10;
  double global_distance = 0.9;
  double global_radius = 0.2;
  double value_gap = 0.3;
  double global_value = -1.0;
  double paraboloid_min = 0.0;

  /// Preset knobs for a dimension and difficulty.
  static ProblemClass standard(std::size_t dimension, Difficulty difficulty,
                               std::uint64_t seed, std::size_t count = 100);
  void validate() const;
};

/// Thrown when ball placement cannot satisfy the class constraints.
class GeneratorError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Problem number index (1-based) of the class; deterministic in (seed, index).
Problem generate(const ProblemClass &cls, std::size_t index);

/// Planted structure of a generated problem, for inspection and seam tests.
struct BallInfo {
  Point center;
  double radius = 0.0;
  double value = 0.0;
};
struct GeneratedLayout {
  Point vertex; // paraboloid minimizer T
  std::vector<BallInfo> balls; // balls[0] is the global basin
};
GeneratedLayout generate_layout(const ProblemClass &cls, std::size_t index);

/// Closed-form problems: quadratics with known K and separable trigonometric
/// functions with per-axis minimizers.
std::vector<Problem> analytic_suite();
/// Suite member by name; throws std::invalid_argument for unknown names.
Problem analytic_problem(const std::string &name);

/// Minimizer of t^2 + sin(5 pi t) / 10 on [0, 1].
double trig_axis_minimizer();

/// Largest componentwise relative error |g - g_fd| / max(1, |g|) between the
/// analytic gradient and central differences with step step_fraction times
/// each edge, over samples uniform interior points.
double fd_check(const Problem &problem, std::size_t samples, double step_fraction,
                std::uint64_t seed = 7);

/// JSON manifest: class parameters plus per-problem x* and f*.
std::string class_manifest(const ProblemClass &cls);
/// Reads a manifest and checks that regeneration reproduces its x* and f*.
ProblemClass parse_manifest(const std::string &text);

/// Portable uniform generator: mt19937_64 with explicit conversions.
class Rng {
public:
  explicit Rng(std::uint64_t seed);
  double uniform(); // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next();

private:
  std::mt19937_64 engine_;
};

} // namespace lipgrad
