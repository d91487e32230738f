#include <gtest/gtest.h>

#include <sstream>

#include "lipgrad/optimizer.hpp"
#include "lipgrad/problems.hpp"
#include "support.hpp"

using namespace lipgrad;
using testing_support::sphere;

namespace {

OptConfig budget(std::size_t n) {
  OptConfig c;
  c.max_trials = n;
  return c;
}

// Record box, record value and group indices agree with the partition.
void expect_state_consistent(const TwoPhaseOptimizer &opt) {
  const Partition &part = opt.partition();
  const OptState &st = opt.state();
  double lowest = std::numeric_limits<double>::infinity();
  for (const VertexRecord &r : part.vertices().records()) lowest = std::min(lowest, r.f);
  EXPECT_EQ(st.f_min, lowest);
  EXPECT_EQ(part.vertices().at(st.x_min).f, st.f_min);
  const Box &rec = part.box(st.record_box);
  EXPECT_EQ(rec.anchor, st.x_min);
  EXPECT_EQ(rec.s, st.p);
  EXPECT_LE(part.q_inf(), st.p);
  EXPECT_LE(st.p, part.q_0());
  for (BoxId id : part.anchored_at(st.x_min)) {
    const Box &other = part.box(id);
    EXPECT_GE(other.ch.F, rec.ch.F);
    if (other.ch.F == rec.ch.F) {
      EXPECT_LE(other.ch.d, rec.ch.d);
      if (other.ch.d == rec.ch.d) EXPECT_GE(id, rec.id);
    }
  }
}

} // namespace

TEST(OnePercentRule, Examples) {
  EXPECT_TRUE(improved_by_one_percent(-10.2, -10.0));
  EXPECT_FALSE(improved_by_one_percent(-10.05, -10.0));
  EXPECT_TRUE(improved_by_one_percent(-10.1, -10.0));
  EXPECT_FALSE(improved_by_one_percent(0.0, 0.0));
  EXPECT_TRUE(improved_by_one_percent(-1e-3, 0.0));
  EXPECT_TRUE(improved_by_one_percent(4.9, 5.0));
  EXPECT_FALSE(improved_by_one_percent(4.96, 5.0));
}

TEST(Initialize, SingleTrialAtVertexA) {
  Problem p = sphere({0.5, 0.5});
  p.f = [](std::span<const double>) { return 7.0; };
  TwoPhaseOptimizer opt(p, budget(100));
  EXPECT_EQ(opt.state().f_min, 7.0);
  EXPECT_EQ(opt.partition().box_count(), 1u);
  EXPECT_EQ(opt.partition().box(0).s, 0);
  EXPECT_EQ(opt.state().p, 0);
  EXPECT_EQ(opt.partition().q_inf(), 0);
  EXPECT_EQ(opt.partition().q_0(), 0);
  EXPECT_EQ(opt.partition().vertices().at(1).x, (Point{0.0, 0.0}));
}

TEST(Initialize, StartAtB) {
  const Problem p = sphere({0.3, 0.7}, -1.0, 2.0);
  OptConfig cfg = budget(50);
  cfg.start = StartVertex::b;
  cfg.record_trace = true;
  const RunReport r = optimize(p, cfg);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.front().x, (Point{2.0, 2.0}));
  EXPECT_EQ(r.trace.front().phase, Phase::init);
  for (const TraceRecord &t : r.trace)
    for (double x : t.x) {
      EXPECT_GE(x, -1.0);
      EXPECT_LE(x, 2.0);
    }
}

TEST(Initialize, BudgetOfOneStopsImmediately) {
  const Problem p = sphere({0.3, 0.7});
  const RunReport r = optimize(p, budget(1));
  EXPECT_EQ(r.trials, 1u);
  EXPECT_EQ(r.boxes, 1u);
  EXPECT_EQ(r.stop_reason, StopReason::budget);
}

TEST(Initialize, FailingFirstTrial) {
  Problem p = sphere({0.3, 0.7});
  p.f = [](std::span<const double>) { return std::numeric_limits<double>::infinity(); };
  EXPECT_THROW((TwoPhaseOptimizer{p, budget(10)}), EvaluationError);
}

TEST(ExplorationIteration, SingleBoxIsSubdivided) {
  const Problem p = sphere({0.3, 0.7});
  TwoPhaseOptimizer opt(p, budget(100));
  opt.exploration_iteration(0);
  EXPECT_EQ(opt.partition().box_count(), 3u);
  EXPECT_EQ(opt.state().k, 2u);
  expect_state_consistent(opt);
}

TEST(ExplorationIteration, EmptyRangeIsANoOp) {
  const Problem p = sphere({0.3, 0.7});
  TwoPhaseOptimizer opt(p, budget(100));
  opt.exploration_iteration(0);
  opt.exploration_iteration(0); // group 0 is now empty
  EXPECT_EQ(opt.partition().box_count(), 3u);
  EXPECT_EQ(opt.state().k, 3u);
}

TEST(RecordPhase, StationarityTest) {
  // f = ||x - c||^2 on [0,1]^2: the gradient at a = (0,0) is -2c.
  {
    const Problem p = sphere({-0.5, -0.5});
    TwoPhaseOptimizer opt(p, budget(100));
    EXPECT_TRUE(opt.record_is_stationary());
    opt.record_phase();
    EXPECT_EQ(opt.partition().box_count(), 1u);
  }
  {
    const Problem p = sphere({0.0, 0.0});
    TwoPhaseOptimizer opt(p, budget(100));
    EXPECT_TRUE(opt.record_is_stationary());
  }
  {
    const Problem p = sphere({0.5, -0.5});
    TwoPhaseOptimizer opt(p, budget(100));
    EXPECT_FALSE(opt.record_is_stationary());
    opt.record_phase();
    EXPECT_GT(opt.partition().box_count(), 1u);
    EXPECT_LE(opt.state().k_l, 3u);
    expect_state_consistent(opt);
  }
}

TEST(RecordPhase, ReversedBoxUsesItsOrientation) {
  // Start at b = (1,1): in working coordinates the gradient at the record is
  // reflected, so an objective decreasing toward the upper corner is stationary.
  const Problem p = sphere({1.5, 1.5});
  OptConfig cfg = budget(100);
  cfg.start = StartVertex::b;
  TwoPhaseOptimizer opt(p, cfg);
  EXPECT_TRUE(opt.record_is_stationary());
}

TEST(ExplorationPhase, SwitchesOnImprovement) {
  const Problem p = sphere({0.9, 0.9});
  TwoPhaseOptimizer opt(p, budget(1000));
  const double before = opt.state().f_min;
  const PhaseSwitch sw = opt.exploration_phase();
  if (improved_by_one_percent(opt.state().f_min, before)) EXPECT_EQ(sw, PhaseSwitch::local);
  expect_state_consistent(opt);
}

TEST(Run, ConvexQuadraticFindsTarget) {
  const Problem p = sphere({0.3, 0.7});
  OptConfig cfg = budget(100000);
  cfg.target = StopTarget{{0.3, 0.7}, 1e-4};
  const RunReport r = optimize(p, cfg);
  EXPECT_EQ(r.stop_reason, StopReason::target_found);
  EXPECT_LT(r.trials, 1000u);
  EXPECT_TRUE(target_reached(r.x_min, *cfg.target, p.lower, p.upper));
}

TEST(Run, OneDimensionalSphere) {
  const Problem p = sphere({0.0}, -1.0, 1.0);
  OptConfig cfg = budget(10000);
  cfg.target = StopTarget{{0.0}, 1e-6};
  const RunReport r = optimize(p, cfg);
  EXPECT_EQ(r.stop_reason, StopReason::target_found);
}

TEST(Run, AuditCountersMatchTrials) {
  const Problem p = analytic_problem("trig2d");
  const RunReport r = optimize(p, budget(777));
  EXPECT_LE(r.trials, 777u);
  EXPECT_EQ(r.trials, 777u);
  EXPECT_EQ(r.objective_evaluations, r.trials);
  EXPECT_EQ(r.gradient_evaluations, r.trials);
  EXPECT_EQ(r.stop_reason, StopReason::budget);
}

TEST(Run, HistoryIsMonotone) {
  ProblemClass cls = ProblemClass::standard(2, Difficulty::simple, 3, 5);
  for (std::size_t i = 1; i <= 5; ++i) {
    const Problem p = generate(cls, i);
    const RunReport r = optimize(p, budget(3000));
    for (std::size_t k = 1; k < r.history.size(); ++k) {
      EXPECT_GT(r.history[k].trials, r.history[k - 1].trials);
      EXPECT_LE(r.history[k].f_min, r.history[k - 1].f_min);
      EXPECT_LE(r.history[k].max_diagonal_sq, r.history[k - 1].max_diagonal_sq);
    }
  }
}

TEST(Run, RecordMonotoneAndPhaseAccounting) {
  const Problem p = analytic_problem("trig2d");
  OptConfig cfg = budget(2000);
  cfg.record_trace = true;
  const RunReport r = optimize(p, cfg);
  ASSERT_EQ(r.trace.size(), r.trials);
  std::size_t run_of_record = 0;
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    EXPECT_EQ(r.trace[k].trial, k + 1);
    if (k > 0) EXPECT_LE(r.trace[k].f_min, r.trace[k - 1].f_min);
    run_of_record = r.trace[k].phase == Phase::record ? run_of_record + 1 : 0;
    EXPECT_LE(run_of_record, p.dim());
  }
}

TEST(Run, StateStaysConsistentAcrossPhases) {
  const Problem p = analytic_problem("rotated2d");
  TwoPhaseOptimizer opt(p, budget(5000));
  for (int cycle = 0; cycle < 30 && !opt.stopped(); ++cycle) {
    if (opt.exploration_phase() == PhaseSwitch::local && !opt.stopped()) opt.record_phase();
    expect_state_consistent(opt);
  }
}

TEST(Run, DiagonalStop) {
  const Problem p = sphere({0.3, 0.7});
  OptConfig cfg = budget(1'000'000);
  cfg.diagonal_fraction = 0.2;
  const RunReport r = optimize(p, cfg);
  EXPECT_EQ(r.stop_reason, StopReason::diagonal);
  EXPECT_LE(r.history.back().max_diagonal_sq, 0.04 * 2.0 + 1e-15);
}

TEST(Run, StartAtBMirrorsStartAtA) {
  const Problem p = analytic_problem("quadratic2d");
  OptConfig a = budget(400), b = budget(400);
  b.start = StartVertex::b;
  const RunReport ra = optimize(reflect(p), a);
  const RunReport rb = optimize(p, b);
  EXPECT_EQ(ra.trials, rb.trials);
  EXPECT_EQ(ra.boxes, rb.boxes);
  EXPECT_DOUBLE_EQ(ra.f_min, rb.f_min);
  const Point mirrored = reflect_point(p, ra.x_min);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(mirrored[j], rb.x_min[j], 1e-15);
}

TEST(Run, Deterministic) {
  const Problem p = analytic_problem("trig2d");
  OptConfig cfg = budget(1500);
  cfg.record_trace = true;
  std::ostringstream x, y;
  write_trace(x, optimize(p, cfg).trace);
  write_trace(y, optimize(p, cfg).trace);
  EXPECT_EQ(x.str(), y.str());
}

TEST(Config, ValidateAndParse) {
  OptConfig bad;
  bad.epsilon = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = OptConfig{};
  bad.max_trials = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = OptConfig{};
  bad.target = StopTarget{{0.0}, 0.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  std::istringstream in("# run settings\nepsilon = 1e-3\nmax_trials=500\nstart = b\ndelta = 1e-4 # tol\ndiagonal = 0.1\n");
  const OptConfig c = parse_config(in);
  EXPECT_DOUBLE_EQ(c.epsilon, 1e-3);
  EXPECT_EQ(c.max_trials, 500u);
  EXPECT_EQ(c.start, StartVertex::b);
  ASSERT_TRUE(c.target);
  EXPECT_DOUBLE_EQ(c.target->delta, 1e-4);
  EXPECT_DOUBLE_EQ(*c.diagonal_fraction, 0.1);

  std::istringstream unknown("speed = 3\n");
  EXPECT_THROW(parse_config(unknown), std::invalid_argument);
  std::istringstream malformed("epsilon 3\n");
  EXPECT_THROW(parse_config(malformed), std::invalid_argument);
}

TEST(TargetReached, Examples) {
  const StopTarget t{{0.3, 0.7}, 1e-4};
  const Point lo{0.0, 0.0}, hi{1.0, 1.0};
  EXPECT_TRUE(target_reached(Point{0.305, 0.695}, t, lo, hi));
  EXPECT_FALSE(target_reached(Point{0.32, 0.7}, t, lo, hi));
  EXPECT_TRUE(target_reached(Point{0.3, 0.7}, StopTarget{{0.3, 0.7}, 1e-12}, lo, hi));
}
