#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipgrad/problems.hpp"
#include "lipgrad/run.hpp"

namespace lipgrad {

enum class Method { new_method, direct, directl };

const char *to_string(Method m);
Method parse_method(const std::string &text);

/// Runs one method on one problem with the shared stop rules.
RunReport run_method(Method method, const Problem &problem, const OptConfig &config);

/// C1: largest trial count over solved problems (1-based argmax, first on
/// ties). Unsolved problems are reported as "> P_max (j)".
struct CriterionC1 {
  std::size_t value = 0;
  std::size_t argmax = 0; // 0 when nothing was solved
  std::size_t unsolved = 0;
  std::size_t budget = 0;
  std::string to_string() const;
};
CriterionC1 criterion_C1(std::span<const std::size_t> trials, const std::vector<bool> &solved,
                         std::size_t max_trials);

/// C3: mean trial count with max_trials standing in for unsolved problems,
/// which makes it a lower estimate ("> value").
struct CriterionC3 {
  double value = 0.0;
  bool lower_estimate = false;
  std::string to_string() const;
};
CriterionC3 criterion_C3(std::span<const std::size_t> trials, const std::vector<bool> &solved,
                         std::size_t max_trials);

/// C4: p problems where the competitor used fewer trials, q where the
/// reference used fewer. Ties count for neither.
struct WinCount {
  std::size_t p = 0;
  std::size_t q = 0;
  friend bool operator==(const WinCount &, const WinCount &) = default;
};
WinCount criterion_C4(std::span<const std::size_t> reference, std::span<const std::size_t> competitor);

/// Smallest T with at least half of the problems solved within T trials;
/// empty when fewer than half were solved.
std::optional<std::size_t> half_class_trials(std::span<const std::size_t> trials,
                                             const std::vector<bool> &solved);

struct ProblemOutcome {
  std::size_t index = 0;
  std::size_t trials = 0;
  std::size_t boxes = 0;
  bool solved = false;
  double f_min = 0.0;
  StopReason stop_reason = StopReason::budget;
};

struct MethodSummary {
  Method method = Method::new_method;
  std::vector<ProblemOutcome> outcomes; // valid problems, in index order
  std::optional<std::size_t> half;
  CriterionC1 c1;
  std::size_t c2 = 0; // boxes generated on the C1 problem
  CriterionC3 c3;
};

struct Comparison {
  Method reference;
  Method competitor;
  WinCount c4;
  std::string c1_ratio; // competitor C1 / reference C1, '>' when the competitor failed
  std::string c3_ratio;
};

struct ClassReport {
  ProblemClass cls;
  double delta = 0.0;
  std::size_t max_trials = 0;
  double epsilon = 0.0;
  std::vector<std::size_t> valid; // problem indices that generated and evaluated cleanly
  std::vector<std::string> warnings;
  std::vector<MethodSummary> methods;
  std::vector<Comparison> comparisons; // first method against each other one
};

/// Every (method, problem) pair runs with stop rule target(x*, delta) or
/// budget(max_trials). Problems run on `workers` threads; the report depends
/// only on the inputs.
ClassReport run_class(std::span<const Method> methods, const ProblemClass &cls, double delta,
                      std::size_t max_trials, std::size_t workers, double epsilon = 1e-4);

std::string render_text(const ClassReport &report);
std::string render_csv(const ClassReport &report);
std::string render_json(const ClassReport &report);

} // namespace lipgrad
