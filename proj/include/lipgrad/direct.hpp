#pragma once

#include <vector>

#include "lipgrad/problem.hpp"
#include "lipgrad/run.hpp"

namespace lipgrad {

/// Center-sampled box of the DIRECT partition, in unit-cube coordinates.
/// levels[j] = k means the side along j is 3^-k.
struct CenterBox {
  std::size_t id = 0;
  Point center;
  std::vector<int> levels;
  double f_center = 0.0;
  double d = 0.0; // size measure: half-diagonal, or half the longest side for the locally biased variant
};

enum class DirectVariant {
  original,      // every minimal-f box of a size class is a candidate
  locally_biased // size classes by longest side, one candidate each (lowest id among minimal f)
};

/// DIRECT: potentially optimal boxes are the lower-right hull of
/// (center-to-vertex distance, f(center)) passing the epsilon |f_min|
/// improvement test. Each is trisected along all of its longest sides, the
/// side with the best new sample first. Never calls the gradient.
RunReport direct_search(const Problem &problem, const OptConfig &config, DirectVariant variant);

inline RunReport direct_run(const Problem &problem, const OptConfig &config) {
  return direct_search(problem, config, DirectVariant::original);
}
inline RunReport directl_run(const Problem &problem, const OptConfig &config) {
  return direct_search(problem, config, DirectVariant::locally_biased);
}

} // namespace lipgrad
