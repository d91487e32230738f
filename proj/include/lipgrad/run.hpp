#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lipgrad/problem.hpp"
#include "lipgrad/selection.hpp"

namespace lipgrad {

enum class StartVertex { a, b };

enum class StopReason {
  budget,       // trial budget reached
  target_found, // a trial landed in the acceptance region of the known minimizer
  diagonal,     // largest box fell below the requested fraction of the domain diagonal
  resolution    // no box can be refined further at 3^-40 grid resolution
};

enum class Phase { init, exploration, record, direct };

const char *to_string(StopReason reason);
const char *to_string(Phase phase);

/// Settings shared by the two-phase method and the DIRECT baselines.
struct OptConfig {
  double epsilon = 1e-4; // xi = epsilon |f_min|
  std::size_t max_trials = 1'000'000;
  StartVertex start = StartVertex::a; // ignored by the baselines
  std::optional<StopTarget> target;
  std::optional<double> diagonal_fraction;
  bool record_trace = false;
  std::function<void(const HullSnapshot &)> on_selection;

  /// Throws std::invalid_argument on negative epsilon, zero budget or
  /// out-of-range delta / diagonal fraction.
  void validate() const;
};

/// Reads "key = value" lines (epsilon, max_trials, start, delta, diagonal);
/// '#' starts a comment. Unknown keys are an error.
OptConfig parse_config(std::istream &in);

struct HistoryPoint {
  std::size_t trials = 0;
  double f_min = 0.0;
  double max_diagonal_sq = 0.0;
};

struct TraceRecord {
  std::size_t trial = 0;
  Point x;
  double f = 0.0;
  double f_min = 0.0;
  Phase phase = Phase::init;
};

struct RunReport {
  std::string method;
  std::size_t trials = 0;
  std::size_t boxes = 0;
  double f_min = 0.0;
  Point x_min;
  std::vector<HistoryPoint> history;
  StopReason stop_reason = StopReason::budget;
  std::size_t iterations = 0;
  std::size_t objective_evaluations = 0;
  std::size_t gradient_evaluations = 0;
  std::vector<TraceRecord> trace;
};

/// "trial <index> <x1,...,xN> <f> <f_min> <phase>" per record.
void write_trace(std::ostream &out, const std::vector<TraceRecord> &trace);

} // namespace lipgrad
