#pragma once

#include <memory>
#include <optional>

#include "lipgrad/partition.hpp"
#include "lipgrad/run.hpp"
#include "lipgrad/selection.hpp"

namespace lipgrad {

struct OptState {
  double f_min = 0.0;
  TrialIndex x_min = 0; // trial holding the record value
  BoxId record_box = 0;
  int p = 0; // group index of the record box
  double f_min_prec = 0.0;
  std::size_t k = 1;   // iterations (several subdivisions each)
  std::size_t k_g = 0; // exploration iterations in the current phase
  std::size_t k_l = 0; // record-box subdivisions in the current phase
  std::size_t subdivisions = 0;
};

enum class PhaseSwitch { local, reexplore };

/// Two-phase global search for objectives with Lipschitz gradients.
///
/// Exploration: up to N iterations over the groups of large boxes
/// [q_inf, ceil((q_inf + p) / 2)], then one over [q_inf, p]. Each iteration
/// trisects the nondominated boxes of the (d, F) diagram that can improve the
/// record by xi. A 1% record improvement, or ending with a record box that
/// is not among the smallest, hands over to the record phase, which trisects
/// the record box up to N times and stops early once the gradient at the
/// record point points into the box along every edge.
///
/// Not copyable or movable: the partition keeps a pointer to the working problem.
class TwoPhaseOptimizer {
public:
  /// Step 0: one trial at the start vertex, a single box. Throws
  /// EvaluationError if the objective fails there.
  TwoPhaseOptimizer(const Problem &problem, OptConfig config);
  TwoPhaseOptimizer(const TwoPhaseOptimizer &) = delete;
  TwoPhaseOptimizer &operator=(const TwoPhaseOptimizer &) = delete;

  RunReport run();

  void exploration_iteration(int g_hi);
  PhaseSwitch exploration_phase();
  void record_phase();

  /// Stationarity test at the record box: f'(a)(j) (b(j) - a(j)) >= 0 for all j.
  bool record_is_stationary() const;

  bool stopped() const { return stop_.has_value(); }
  std::optional<StopReason> stop_reason() const { return stop_; }
  const OptState &state() const { return state_; }
  const Partition &partition() const { return *partition_; }
  RunReport report() const;

private:
  void subdivide(BoxId id);
  void accept_trial(const VertexRecord &rec, Phase phase);
  void resolve_record_box();
  void check_stop_after_subdivision();
  void push_milestone();
  Point to_user(const Point &x) const;

  Problem user_problem_;
  Problem work_problem_; // reflected when starting from b
  OptConfig config_;
  std::unique_ptr<std::size_t> f_calls_ = std::make_unique<std::size_t>(0);
  std::unique_ptr<std::size_t> grad_calls_ = std::make_unique<std::size_t>(0);
  std::unique_ptr<Partition> partition_;
  OptState state_;
  Phase phase_ = Phase::init;
  std::optional<StopReason> stop_;
  double initial_diag_sq_ = 0.0;
  std::vector<HistoryPoint> history_;
  std::vector<TraceRecord> trace_;
};

/// Record-phase trigger: f_min <= f_prec - 0.01 |f_prec|,
/// with a strict decrease required so that a zero record does not trigger it.
bool improved_by_one_percent(double f_min, double f_prec);

RunReport optimize(const Problem &problem, const OptConfig &config);

} // namespace lipgrad
