#include <gtest/gtest.h>

#include "lipgrad/bench.hpp"

using namespace lipgrad;

namespace {

using Counts = std::vector<std::size_t>;

std::vector<bool> all(std::size_t n, bool v = true) { return std::vector<bool>(n, v); }

} // namespace

TEST(CriterionC1, LargestSolvedCount) {
  const Counts t{10, 50, 20};
  const CriterionC1 c = criterion_C1(t, all(3), 1000);
  EXPECT_EQ(c.value, 50u);
  EXPECT_EQ(c.argmax, 2u);
  EXPECT_EQ(c.to_string(), "50");
}

TEST(CriterionC1, TiesTakeFirstIndex) {
  const Counts t{30, 30, 30};
  EXPECT_EQ(criterion_C1(t, all(3), 1000).argmax, 1u);
}

TEST(CriterionC1, UnsolvedProblemsAreCounted) {
  const Counts t{1000, 12, 1000, 1000};
  const CriterionC1 c = criterion_C1(t, {false, true, false, false}, 1000);
  EXPECT_EQ(c.unsolved, 3u);
  EXPECT_EQ(c.to_string(), "> 1000 (3)");
  EXPECT_THROW(criterion_C1(t, all(3), 1000), std::invalid_argument);
}

TEST(CriterionC3, MeanAndLowerEstimate) {
  const Counts one{7};
  EXPECT_EQ(criterion_C3(one, all(1), 100).to_string(), "7.0");
  const Counts t{10, 20, 33};
  const CriterionC3 c = criterion_C3(t, all(3), 100);
  EXPECT_DOUBLE_EQ(c.value, 21.0);
  EXPECT_FALSE(c.lower_estimate);

  Counts mostly_zero(100, 0);
  std::vector<bool> solved = all(100);
  solved[0] = false;
  const CriterionC3 lower = criterion_C3(mostly_zero, solved, 1000);
  EXPECT_TRUE(lower.lower_estimate);
  EXPECT_EQ(lower.to_string(), "> 10.0");
}

TEST(CriterionC4, WinsAndTies) {
  const Counts ref{5, 5}, comp{7, 3};
  EXPECT_EQ(criterion_C4(ref, comp), (WinCount{1, 1}));
  EXPECT_EQ(criterion_C4(ref, ref), (WinCount{0, 0}));
  const Counts big{6, 6};
  EXPECT_EQ(criterion_C4(ref, big), (WinCount{0, 2}));
  EXPECT_THROW(criterion_C4(ref, Counts{1}), std::invalid_argument);
}

TEST(HalfClass, CeilingOfHalf) {
  const Counts t{40, 10, 30, 20, 50};
  EXPECT_EQ(half_class_trials(t, all(5)), 30u);
  EXPECT_EQ(half_class_trials(t, {true, true, false, false, false}), std::nullopt);
  EXPECT_EQ(half_class_trials(t, {false, true, true, true, false}), 30u);
  const Counts even{4, 1, 3, 2};
  EXPECT_EQ(half_class_trials(even, all(4)), 2u);
}

TEST(RunClass, SingleMethodHasNoComparison) {
  const ProblemClass cls = ProblemClass::standard(2, Difficulty::simple, 3, 4);
  const std::vector<Method> m{Method::new_method};
  const ClassReport r = run_class(m, cls, 1e-4, 100000, 2);
  EXPECT_TRUE(r.comparisons.empty());
  ASSERT_EQ(r.methods.size(), 1u);
  EXPECT_EQ(r.methods[0].outcomes.size(), 4u);
  EXPECT_EQ(render_text(r).find("comparison"), std::string::npos);
}

TEST(RunClass, TinyBudgetLeavesEverythingUnsolved) {
  const ProblemClass cls = ProblemClass::standard(2, Difficulty::simple, 1, 20);
  const std::vector<Method> m{Method::new_method, Method::direct};
  const ClassReport r = run_class(m, cls, 1e-4, 1, 4);
  for (const MethodSummary &s : r.methods) {
    EXPECT_EQ(s.c1.to_string(), "> 1 (20)");
    EXPECT_EQ(s.c3.to_string(), "> 1.0");
    EXPECT_FALSE(s.half);
  }
  EXPECT_EQ(r.comparisons[0].c4, (WinCount{0, 0}));
  EXPECT_EQ(r.comparisons[0].c3_ratio, "~ 1.00");
}

TEST(RunClass, WorkerCountDoesNotChangeOutput) {
  const ProblemClass cls = ProblemClass::standard(2, Difficulty::simple, 5, 12);
  const std::vector<Method> m{Method::new_method, Method::direct, Method::directl};
  const ClassReport serial = run_class(m, cls, 1e-4, 20000, 1);
  const ClassReport parallel = run_class(m, cls, 1e-4, 20000, 4);
  EXPECT_EQ(render_text(serial), render_text(parallel));
  EXPECT_EQ(render_csv(serial), render_csv(parallel));
  EXPECT_EQ(render_json(serial), render_json(parallel));
}

TEST(RunClass, ReportMatchesPerProblemRuns) {
  const ProblemClass cls = ProblemClass::standard(2, Difficulty::simple, 8, 3);
  const std::vector<Method> m{Method::new_method, Method::directl};
  const ClassReport r = run_class(m, cls, 1e-4, 50000, 2);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::size_t i = 1; i <= 3; ++i) {
      const Problem p = generate(cls, i);
      OptConfig c;
      c.max_trials = 50000;
      c.target = StopTarget{p.known_opt->x, 1e-4};
      const RunReport run = run_method(m[k], p, c);
      const ProblemOutcome &o = r.methods[k].outcomes[i - 1];
      EXPECT_EQ(o.index, i);
      EXPECT_EQ(o.trials, run.trials);
      EXPECT_EQ(o.boxes, run.boxes);
      EXPECT_EQ(o.solved, run.stop_reason == StopReason::target_found);
    }
}

TEST(RunClass, GeneratorFailuresBecomeWarnings) {
  ProblemClass cls = ProblemClass::standard(2, Difficulty::simple, 1, 3);
  cls.num_minima = 5000;
  const std::vector<Method> m{Method::new_method, Method::direct};
  const ClassReport r = run_class(m, cls, 1e-4, 100, 2);
  EXPECT_TRUE(r.valid.empty());
  ASSERT_EQ(r.warnings.size(), 3u);
  EXPECT_NE(r.warnings[0].find("problem 1 skipped"), std::string::npos);
  EXPECT_NE(render_text(r).find("warning: problem 3 skipped"), std::string::npos);
  EXPECT_THROW(run_class({}, cls, 1e-4, 100, 1), std::invalid_argument);
}

TEST(Methods, NamesRoundTrip) {
  for (Method m : {Method::new_method, Method::direct, Method::directl})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("simplex"), std::invalid_argument);
}
