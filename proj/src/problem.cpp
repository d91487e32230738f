#include "lipgrad/problem.hpp"

#include <cmath>

namespace lipgrad {

void Problem::validate() const {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("problem bounds must be non-empty and of equal length");
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (!(lower[j] < upper[j]))
      throw std::invalid_argument("problem bounds must satisfy lower < upper");
  if (!f) throw std::invalid_argument("problem has no objective");
}

double Problem::value(std::span<const double> x) const {
  double v;
  try {
    v = f(x);
  } catch (const EvaluationError &) {
    throw;
  } catch (const std::exception &e) {
    throw EvaluationError(name + ": objective threw: " + e.what());
  }
  if (!std::isfinite(v)) throw EvaluationError(name + ": objective is not finite");
  return v;
}

std::vector<double> Problem::gradient(std::span<const double> x) const {
  if (!grad) throw EvaluationError(name + ": problem has no gradient");
  std::vector<double> g(dim(), 0.0);
  try {
    grad(x, g);
  } catch (const EvaluationError &) {
    throw;
  } catch (const std::exception &e) {
    throw EvaluationError(name + ": gradient threw: " + e.what());
  }
  for (double gj : g)
    if (!std::isfinite(gj)) throw EvaluationError(name + ": gradient is not finite");
  return g;
}

Point reflect_point(const Problem &problem, std::span<const double> x) {
  Point y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    y[j] = problem.lower[j] + problem.upper[j] - x[j];
  return y;
}

Problem reflect(const Problem &problem) {
  Problem r = problem;
  const Point lo = problem.lower, hi = problem.upper;
  auto mirror = [lo, hi](std::span<const double> x) {
    Point y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = lo[j] + hi[j] - x[j];
    return y;
  };
  r.f = [f = problem.f, mirror](std::span<const double> x) { return f(mirror(x)); };
  if (problem.grad) {
    r.grad = [g = problem.grad, mirror](std::span<const double> x, std::span<double> out) {
      g(mirror(x), out);
      for (double &v : out) v = -v;
    };
  }
  if (problem.known_opt) r.known_opt->x = reflect_point(problem, problem.known_opt->x);
  return r;
}

Domain::Domain(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("domain bounds differ in length");
}

Point Domain::to_real(const GridVertex &v) const {
  Point x(v.dim());
  for (std::size_t j = 0; j < v.dim(); ++j) x[j] = coord(j, v[j]);
  return x;
}

bool target_reached(std::span<const double> x, const StopTarget &target,
                    std::span<const double> lower, std::span<const double> upper) {
  const std::size_t n = x.size();
  const double scale = std::pow(target.delta, 1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(x[i] - target.x_star[i]) > scale * (upper[i] - lower[i])) return false;
  return true;
}

} // namespace lipgrad
