#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipgrad/grid.hpp"

namespace lipgrad {

using Point = std::vector<double>;

/// Raised when an objective returns a non-finite value or throws.
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct KnownOptimum {
  Point x;
  double f = 0.0;
};

/// Box-constrained objective with an analytic gradient. The callbacks must be
/// pure and reentrant: problems are shared read-only across worker threads.
struct Problem {
  using Objective = std::function<double(std::span<const double>)>;
  using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

  std::string name;
  Point lower;
  Point upper;
  Objective f;
  Gradient grad;
  std::optional<KnownOptimum> known_opt;
  std::optional<double> known_K; // Lipschitz constant of the gradient

  std::size_t dim() const { return lower.size(); }

  /// Throws std::invalid_argument on malformed bounds or missing callbacks.
  void validate() const;

  /// f(x), checked for finiteness.
  double value(std::span<const double> x) const;
  /// f'(x), checked for finiteness.
  std::vector<double> gradient(std::span<const double> x) const;
};

/// The same problem seen through x -> lower + upper - x, so that a search
/// anchored at the lower corner explores from the upper one.
Problem reflect(const Problem &problem);
Point reflect_point(const Problem &problem, std::span<const double> x);

/// Maps grid coordinates (fractions of the domain edges) to real space.
class Domain {
public:
  Domain() = default;
  Domain(Point lower, Point upper);

  std::size_t dim() const { return lower_.size(); }
  const Point &lower() const { return lower_; }
  const Point &upper() const { return upper_; }
  double width(std::size_t j) const { return upper_[j] - lower_[j]; }

  double coord(std::size_t j, const GridFraction &c) const {
    return lower_[j] + c.to_double() * width(j);
  }
  Point to_real(const GridVertex &v) const;

private:
  Point lower_;
  Point upper_;
};

/// Solution acceptance: every coordinate of a trial point within
/// delta^(1/N) of the domain edge from the known minimizer.
struct StopTarget {
  Point x_star;
  double delta = 1e-4;
};

bool target_reached(std::span<const double> x, const StopTarget &target,
                    std::span<const double> lower, std::span<const double> upper);

} // namespace lipgrad
