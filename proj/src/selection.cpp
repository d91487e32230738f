#include "lipgrad/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lipgrad {

std::vector<Dot> group_representatives(const Partition &partition, int s_lo, int s_hi) {
  std::vector<Dot> dots;
  const auto &groups = partition.groups();
  for (auto it = groups.lower_bound(s_lo); it != groups.end() && it->first <= s_hi; ++it) {
    const double best = it->second.begin()->F;
    for (const GroupEntry &e : it->second) {
      if (e.F != best) break;
      const Box &bx = partition.box(e.id);
      dots.push_back(Dot{e.id, bx.ch.d, e.F, bx.s});
    }
  }
  return dots;
}

namespace {

struct HullPoint {
  double d;
  double F;
};

double slope(const HullPoint &from, const HullPoint &to) {
  return (to.F - from.F) / (to.d - from.d);
}

} // namespace

HullResult nondominated(std::span<const Dot> dots) {
  HullResult out;
  if (dots.empty()) return out;
  for (const Dot &dot : dots)
    if (!(dot.d > 0.0)) throw std::invalid_argument("diagram abscissa must be positive");

  std::vector<Dot> sorted(dots.begin(), dots.end());
  std::sort(sorted.begin(), sorted.end(), [](const Dot &x, const Dot &y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.F != y.F) return x.F < y.F;
    return x.box_id < y.box_id;
  });

  // The hull starts at the minimal F (largest d among ties); everything to
  // its left is dominated as Khat -> 0+.
  double f_low = sorted.front().F;
  for (const Dot &dot : sorted) f_low = std::min(f_low, dot.F);
  std::size_t start = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k].F == f_low) start = k;
  while (start > 0 && sorted[start - 1].d == sorted[start].d && sorted[start - 1].F == f_low)
    --start;

  // Lowest dot of each abscissa from the start on, then a lower-hull scan
  // that keeps collinear points (they share a feasible slope).
  std::vector<HullPoint> chain;
  for (std::size_t k = start; k < sorted.size(); ++k) {
    if (!chain.empty() && chain.back().d == sorted[k].d) continue;
    const HullPoint p{sorted[k].d, sorted[k].F};
    while (chain.size() >= 2 &&
           slope(chain[chain.size() - 2], chain.back()) > slope(chain.back(), p))
      chain.pop_back();
    chain.push_back(p);
  }

  for (std::size_t h = 0; h < chain.size(); ++h) {
    SlopeInterval interval;
    if (h > 0) interval.lower = slope(chain[h - 1], chain[h]);
    if (h + 1 < chain.size()) interval.upper = slope(chain[h], chain[h + 1]);
    for (std::size_t k = start; k < sorted.size(); ++k) {
      if (sorted[k].d == chain[h].d && sorted[k].F == chain[h].F) {
        out.selected.push_back(sorted[k]);
        out.slopes.push_back(interval);
      }
    }
  }
  return out;
}

std::vector<BoxId> improvement_filter(const HullResult &hull, double f_min, double xi) {
  std::vector<BoxId> kept;
  for (std::size_t k = 0; k < hull.selected.size(); ++k) {
    const Dot &dot = hull.selected[k];
    const double K = hull.slopes[k].upper;
    if (std::isinf(K) || dot.F - K * dot.d <= f_min - xi) kept.push_back(dot.box_id);
  }
  return kept;
}

double xi_value(double f_min, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
  return epsilon * std::abs(f_min);
}

HullSnapshot make_snapshot(std::span<const Dot> dots, const HullResult &hull,
                           std::span<const BoxId> kept, double f_min, double xi) {
  HullSnapshot snap;
  snap.dots.assign(dots.begin(), dots.end());
  snap.f_min = f_min;
  snap.xi = xi;
  for (const Dot &dot : dots) {
    snap.nondominated.push_back(std::any_of(hull.selected.begin(), hull.selected.end(),
                                            [&](const Dot &h) { return h.box_id == dot.box_id; }));
    snap.subdivided.push_back(std::find(kept.begin(), kept.end(), dot.box_id) != kept.end());
  }
  for (std::size_t k = 0; k < hull.selected.size(); ++k) {
    const bool tied = k > 0 && hull.selected[k].d == hull.selected[k - 1].d &&
                      hull.selected[k].F == hull.selected[k - 1].F;
    if (!tied && std::isfinite(hull.slopes[k].upper))
      snap.breakpoints.push_back(hull.slopes[k].upper);
  }
  return snap;
}

} // namespace lipgrad
