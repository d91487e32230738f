#include "lipgrad/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace lipgrad {

bool improved_by_one_percent(double f_min, double f_prec) {
  return f_min < f_prec && f_min <= f_prec - 0.01 * std::abs(f_prec);
}

TwoPhaseOptimizer::TwoPhaseOptimizer(const Problem &problem, OptConfig config)
    : user_problem_(problem), config_(std::move(config)) {
  problem.validate();
  config_.validate();
  if (!problem.grad) throw std::invalid_argument("two-phase method needs a gradient");

  work_problem_ = config_.start == StartVertex::b ? reflect(problem) : problem;
  std::size_t *fc = f_calls_.get();
  std::size_t *gc = grad_calls_.get();
  work_problem_.f = [f = work_problem_.f, fc](std::span<const double> x) {
    ++*fc;
    return f(x);
  };
  work_problem_.grad = [g = work_problem_.grad, gc](std::span<const double> x, std::span<double> out) {
    ++*gc;
    g(x, out);
  };

  partition_ = std::make_unique<Partition>(work_problem_);
  initial_diag_sq_ = partition_->max_diagonal_sq();

  const VertexRecord &first = partition_->vertices().at(1);
  state_.f_min = first.f;
  state_.x_min = first.trial_index;
  state_.f_min_prec = first.f;
  resolve_record_box();
  accept_trial(first, Phase::init);
  check_stop_after_subdivision();
  push_milestone();
}

Point TwoPhaseOptimizer::to_user(const Point &x) const {
  return config_.start == StartVertex::b ? reflect_point(user_problem_, x) : x;
}

void TwoPhaseOptimizer::accept_trial(const VertexRecord &rec, Phase phase) {
  if (rec.f < state_.f_min) {
    state_.f_min = rec.f;
    state_.x_min = rec.trial_index;
  }
  const Point x = to_user(rec.x);
  if (config_.record_trace)
    trace_.push_back(TraceRecord{rec.trial_index, x, rec.f, state_.f_min, phase});
  if (!stop_ && config_.target &&
      target_reached(x, *config_.target, user_problem_.lower, user_problem_.upper))
    stop_ = StopReason::target_found;
}

void TwoPhaseOptimizer::resolve_record_box() {
  // Among boxes anchored at the record point: minimal F, then larger d, then smaller id.
  const Partition &part = *partition_;
  const auto candidates = part.anchored_at(state_.x_min);
  if (candidates.empty()) throw std::logic_error("record point anchors no box");
  BoxId best = candidates.front();
  for (BoxId id : candidates) {
    const Box &c = part.box(id);
    const Box &b = part.box(best);
    if (c.ch.F < b.ch.F || (c.ch.F == b.ch.F && (c.ch.d > b.ch.d || (c.ch.d == b.ch.d && id < best))))
      best = id;
  }
  state_.record_box = best;
  state_.p = part.box(best).s;
}

void TwoPhaseOptimizer::check_stop_after_subdivision() {
  if (stop_) return;
  if (partition_->eval_count() >= config_.max_trials) {
    stop_ = StopReason::budget;
  } else if (config_.diagonal_fraction) {
    const double limit = *config_.diagonal_fraction * *config_.diagonal_fraction * initial_diag_sq_;
    if (partition_->max_diagonal_sq() <= limit) stop_ = StopReason::diagonal;
  }
}

void TwoPhaseOptimizer::subdivide(BoxId id) {
  const TrisectResult res = partition_->trisect(id);
  ++state_.subdivisions;
  if (res.new_trial) accept_trial(*res.new_trial, phase_);
  resolve_record_box();
  check_stop_after_subdivision();
}

void TwoPhaseOptimizer::exploration_iteration(int g_hi) {
  if (stop_) return;
  const Partition &part = *partition_;
  const std::vector<Dot> dots = group_representatives(part, part.q_inf(), g_hi);
  const HullResult hull = nondominated(dots);
  const double xi = xi_value(state_.f_min, config_.epsilon);
  const std::vector<BoxId> kept = improvement_filter(hull, state_.f_min, xi);
  if (config_.on_selection) config_.on_selection(make_snapshot(dots, hull, kept, state_.f_min, xi));
  for (BoxId id : kept) {
    if (stop_) break;
    if (partition_->splittable(id)) subdivide(id);
  }
  ++state_.k;
}

PhaseSwitch TwoPhaseOptimizer::exploration_phase() {
  phase_ = Phase::exploration;
  state_.f_min_prec = state_.f_min;
  const std::size_t n = partition_->dim();
  for (state_.k_g = 1; state_.k_g <= n; ++state_.k_g) {
    const int g_hi = (partition_->q_inf() + state_.p + 1) / 2;
    exploration_iteration(g_hi);
    if (stop_) return PhaseSwitch::reexplore;
    if (improved_by_one_percent(state_.f_min, state_.f_min_prec)) return PhaseSwitch::local;
  }
  exploration_iteration(state_.p);
  if (stop_) return PhaseSwitch::reexplore;
  return state_.p < partition_->q_0() ? PhaseSwitch::local : PhaseSwitch::reexplore;
}

bool TwoPhaseOptimizer::record_is_stationary() const {
  const Box &box = partition_->box(state_.record_box);
  const VertexRecord &rec = partition_->record(box);
  for (std::size_t j = 0; j < box.a.dim(); ++j)
    if (rec.grad[j] * orientation(box.a, box.b, j) < 0.0) return false;
  return true;
}

void TwoPhaseOptimizer::record_phase() {
  phase_ = Phase::record;
  ++state_.k;
  const std::size_t n = partition_->dim();
  for (state_.k_l = 1; state_.k_l <= n && !stop_; ++state_.k_l) {
    if (record_is_stationary()) break;
    if (!partition_->splittable(state_.record_box)) break;
    subdivide(state_.record_box);
  }
}

void TwoPhaseOptimizer::push_milestone() {
  const std::size_t trials = partition_->eval_count();
  if (!history_.empty() && history_.back().trials == trials) return;
  history_.push_back(HistoryPoint{trials, state_.f_min, partition_->max_diagonal_sq()});
}

RunReport TwoPhaseOptimizer::run() {
  while (!stop_) {
    const std::size_t before = state_.subdivisions;
    const PhaseSwitch sw = exploration_phase();
    push_milestone();
    if (!stop_ && sw == PhaseSwitch::local) {
      record_phase();
      push_milestone();
    }
    if (!stop_ && state_.subdivisions == before) stop_ = StopReason::resolution;
  }
  push_milestone();
  return report();
}

RunReport TwoPhaseOptimizer::report() const {
  RunReport r;
  r.method = "new";
  r.trials = partition_->eval_count();
  r.boxes = partition_->box_count();
  r.f_min = state_.f_min;
  r.x_min = to_user(partition_->vertices().at(state_.x_min).x);
  r.history = history_;
  r.stop_reason = stop_.value_or(StopReason::budget);
  r.iterations = state_.k;
  r.objective_evaluations = *f_calls_;
  r.gradient_evaluations = *grad_calls_;
  r.trace = trace_;
  return r;
}

RunReport optimize(const Problem &problem, const OptConfig &config) {
  TwoPhaseOptimizer opt(problem, config);
  return opt.run();
}

} // namespace lipgrad
