#pragma once

#include <limits>
#include <span>
#include <vector>

#include "lipgrad/partition.hpp"

namespace lipgrad {

/// A box on the (d, F) diagram.
struct Dot {
  BoxId box_id = 0;
  double d = 0.0;
  double F = 0.0;
  int s = 0;
};

/// Range of Lipschitz estimates for which a hull dot attains the smallest
/// characteristic. lower is 0 for the dot with minimal F, upper is +inf for
/// the dot with the largest d.
struct SlopeInterval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// Nondominated dots ordered by increasing d. Dots sharing the same (d, F)
/// are listed consecutively and share one slope interval.
struct HullResult {
  std::vector<Dot> selected;
  std::vector<SlopeInterval> slopes; // parallel to selected
};

/// Minimal-F dots (ties included) of every nonempty group with s in [s_lo, s_hi].
std::vector<Dot> group_representatives(const Partition &partition, int s_lo, int s_hi);

/// Dots t for which some Khat > 0 gives F_t - Khat d_t <= F_j - Khat d_j for
/// all j, i.e. the lower-right convex hull from the minimal-F dot to the
/// largest d. All d must be positive.
HullResult nondominated(std::span<const Dot> dots);

/// Hull boxes that can still improve the record by xi: some Khat in the slope
/// interval gives F - Khat d <= f_min - xi. Tested at the interval's upper end.
std::vector<BoxId> improvement_filter(const HullResult &hull, double f_min, double xi);

/// xi = epsilon |f_min|.
double xi_value(double f_min, double epsilon);

/// Diagram data for one selection step.
struct HullSnapshot {
  std::vector<Dot> dots;
  std::vector<bool> nondominated; // parallel to dots
  std::vector<bool> subdivided;   // nondominated and passed the filter
  std::vector<double> breakpoints; // slopes between consecutive hull dots
  double f_min = 0.0;
  double xi = 0.0;
};

HullSnapshot make_snapshot(std::span<const Dot> dots, const HullResult &hull,
                           std::span<const BoxId> kept, double f_min, double xi);

} // namespace lipgrad
