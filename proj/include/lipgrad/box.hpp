#pragma once

#include <cstddef>
#include <vector>

#include "lipgrad/grid.hpp"
#include "lipgrad/problem.hpp"

namespace lipgrad {

using BoxId = std::size_t;
using TrialIndex = std::size_t; // 1-based order of first evaluation

/// Stored trial: f and f' at a grid vertex. Written once, never replaced.
struct VertexRecord {
  GridVertex vertex;
  Point x;
  double f = 0.0;
  std::vector<double> grad;
  TrialIndex trial_index = 0;
};

/// Lower-bound data for a box: z minimizes the gradient linearization at the
/// trial vertex over the box, F is its value there, d = 0.5 ||b - a||^2.
struct Characteristic {
  GridVertex z;
  double F = 0.0;
  double d = 0.0;
};

/// Hyperinterval [a, b] with its trial point at a. The main diagonal may point
/// in any orientation; a(j) != b(j) on every axis.
struct Box {
  BoxId id = 0;
  GridVertex a;
  GridVertex b;
  int s = 0; // number of trisections from the initial domain
  TrialIndex anchor = 0;
  Characteristic ch;
};

/// Axis of a longest edge in real space; smallest index among ties.
std::size_t longest_side(const Domain &domain, const GridVertex &a, const GridVertex &b);
inline std::size_t longest_side(const Domain &domain, const Box &box) {
  return longest_side(domain, box.a, box.b);
}

/// Exact volume relative to the domain.
ExactVolume volume(const GridVertex &a, const GridVertex &b);
inline ExactVolume volume(const Box &box) { return volume(box.a, box.b); }

/// Squared main-diagonal length in real space.
double diagonal_sq(const Domain &domain, const GridVertex &a, const GridVertex &b);
inline double diagonal_sq(const Domain &domain, const Box &box) {
  return diagonal_sq(domain, box.a, box.b);
}

/// Sign of b(j) - a(j): +1 or -1 (the box is nondegenerate).
int orientation(const GridVertex &a, const GridVertex &b, std::size_t j);

} // namespace lipgrad
