#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>

#include "lipgrad/problem.hpp"
#include "lipgrad/selection.hpp"

namespace testing_support {

using lipgrad::Point;
using lipgrad::Problem;

// f(x) = sum (x_j - c_j)^2 on [lo, hi]^N, counting objective calls.
inline Problem sphere(Point c, double lo = 0.0, double hi = 1.0,
                      std::shared_ptr<std::size_t> calls = nullptr) {
  Problem p;
  p.name = "sphere";
  p.lower.assign(c.size(), lo);
  p.upper.assign(c.size(), hi);
  p.f = [c, calls](std::span<const double> x) {
    if (calls) ++*calls;
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - c[j]) * (x[j] - c[j]);
    return s;
  };
  p.grad = [c](std::span<const double> x, std::span<double> g) {
    for (std::size_t j = 0; j < x.size(); ++j) g[j] = 2.0 * (x[j] - c[j]);
  };
  p.known_opt = lipgrad::KnownOptimum{c, 0.0};
  p.known_K = 2.0;
  return p;
}

// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
inline double largest_eigenvalue(std::vector<std::vector<double>> A) {
  const std::size_t n = A.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (A[p][q] == 0.0) continue;
        const double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
      }
  }
  double best = A[0][0];
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, A[i][i]);
  return best;
}

// Random convex quadratic x^T A x / 2 + b^T x with A = M^T M.
inline Problem quadratic(std::size_t n, std::mt19937_64 &rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> M(n, Point(n)), A(n, Point(n, 0.0));
  for (auto &row : M)
    for (double &x : row) x = u(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) A[i][j] += M[k][i] * M[k][j];
  Point b(n);
  for (double &x : b) x = u(rng);
  Problem p;
  p.name = "quadratic";
  p.lower.assign(n, lo);
  p.upper.assign(n, hi);
  p.f = [A, b](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += b[i] * x[i];
      for (std::size_t j = 0; j < x.size(); ++j) s += 0.5 * x[i] * A[i][j] * x[j];
    }
    return s;
  };
  p.grad = [A, b](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      g[i] = b[i];
      for (std::size_t j = 0; j < x.size(); ++j) g[i] += A[i][j] * x[j];
    }
  };
  // The gradient is Ax + b, so its Lipschitz constant is the largest eigenvalue of A.
  p.known_K = largest_eigenvalue(A);
  return p;
}

// Exact pairwise feasibility on integer dots: t is nondominated iff some K > 0
// satisfies F_t - K d_t <= F_j - K d_j for every j. Bounds are kept as
// fractions num/den with den > 0.
struct Frac {
  long long num, den;
};
inline bool less(Frac x, Frac y) { return x.num * y.den < y.num * x.den; }

inline std::set<lipgrad::BoxId> oracle(const std::vector<lipgrad::Dot> &dots,
                                      std::set<lipgrad::BoxId> *passes = nullptr,
                                      double f_min = 0.0, bool test_filter = false) {
  std::set<lipgrad::BoxId> out;
  for (const lipgrad::Dot &t : dots) {
    bool has_lo = false, has_hi = false, ok = true;
    Frac lo{0, 1}, hi{0, 1};
    for (const lipgrad::Dot &j : dots) {
      const long long dd = static_cast<long long>(j.d) - static_cast<long long>(t.d);
      const long long dF = static_cast<long long>(j.F) - static_cast<long long>(t.F);
      if (dd > 0) {
        const Frac b{dF, dd};
        if (!has_hi || less(b, hi)) hi = b;
        has_hi = true;
      } else if (dd < 0) {
        const Frac b{-dF, -dd};
        if (!has_lo || less(lo, b)) lo = b;
        has_lo = true;
      } else if (dF < 0) {
        ok = false;
      }
    }
    if (!ok) continue;
    const bool hi_positive = !has_hi || hi.num > 0;
    const bool lo_positive = has_lo && lo.num > 0;
    const bool feasible = lo_positive ? (!has_hi || !less(hi, lo)) : hi_positive;
    if (!feasible) continue;
    out.insert(t.box_id);
    if (test_filter && passes) {
      // F_t - K d_t <= f_min is easiest at the largest feasible K.
      if (!has_hi || t.F * hi.den - hi.num * t.d <= f_min * static_cast<double>(hi.den))
        passes->insert(t.box_id);
    }
  }
  return out;
}

inline std::vector<lipgrad::Dot> random_dots(std::mt19937_64 &rng, bool distinct_d) {
  const std::size_t n = 1 + rng() % 15;
  std::vector<lipgrad::Dot> dots;
  std::set<int> used;
  for (std::size_t k = 0; k < n; ++k) {
    int d = 1 + static_cast<int>(rng() % 20);
    if (distinct_d) {
      if (!used.insert(d).second) continue;
    }
    const int F = static_cast<int>(rng() % 21) - 10;
    dots.push_back(lipgrad::Dot{k, static_cast<double>(d), static_cast<double>(F), 0});
  }
  return dots;
}

} // namespace testing_support
