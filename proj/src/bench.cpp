#include "lipgrad/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "lipgrad/direct.hpp"
#include "lipgrad/optimizer.hpp"

namespace lipgrad {

const char *to_string(Method m) {
  switch (m) {
  case Method::new_method: return "new";
  case Method::direct: return "direct";
  case Method::directl: return "directl";
  }
  return "?";
}

Method parse_method(const std::string &text) {
  if (text == "new") return Method::new_method;
  if (text == "direct") return Method::direct;
  if (text == "directl") return Method::directl;
  throw std::invalid_argument("method must be new, direct or directl, got '" + text + "'");
}

RunReport run_method(Method method, const Problem &problem, const OptConfig &config) {
  switch (method) {
  case Method::new_method: return optimize(problem, config);
  case Method::direct: return direct_run(problem, config);
  case Method::directl: return directl_run(problem, config);
  }
  throw std::logic_error("unknown method");
}

namespace {

std::string fmt(const char *pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("trial and solved lists differ in length");
}

} // namespace

std::string CriterionC1::to_string() const {
  if (unsolved > 0) return "> " + std::to_string(budget) + " (" + std::to_string(unsolved) + ")";
  return std::to_string(value);
}

CriterionC1 criterion_C1(std::span<const std::size_t> trials, const std::vector<bool> &solved,
                         std::size_t max_trials) {
  check_lengths(trials.size(), solved.size());
  CriterionC1 c;
  c.budget = max_trials;
  for (std::size_t s = 0; s < trials.size(); ++s) {
    if (!solved[s]) {
      ++c.unsolved;
      continue;
    }
    if (c.argmax == 0 || trials[s] > c.value) {
      c.value = trials[s];
      c.argmax = s + 1;
    }
  }
  return c;
}

std::string CriterionC3::to_string() const {
  return (lower_estimate ? "> " : "") + fmt("%.1f", value);
}

CriterionC3 criterion_C3(std::span<const std::size_t> trials, const std::vector<bool> &solved,
                         std::size_t max_trials) {
  check_lengths(trials.size(), solved.size());
  CriterionC3 c;
  if (trials.empty()) return c;
  double sum = 0.0;
  for (std::size_t s = 0; s < trials.size(); ++s) {
    if (solved[s]) {
      sum += static_cast<double>(trials[s]);
    } else {
      sum += static_cast<double>(max_trials);
      c.lower_estimate = true;
    }
  }
  c.value = sum / static_cast<double>(trials.size());
  return c;
}

WinCount criterion_C4(std::span<const std::size_t> reference, std::span<const std::size_t> competitor) {
  if (reference.size() != competitor.size())
    throw std::invalid_argument("C4 needs trial lists of equal length");
  WinCount w;
  for (std::size_t s = 0; s < reference.size(); ++s) {
    if (competitor[s] < reference[s]) ++w.p;
    if (reference[s] < competitor[s]) ++w.q;
  }
  return w;
}

std::optional<std::size_t> half_class_trials(std::span<const std::size_t> trials,
                                             const std::vector<bool> &solved) {
  check_lengths(trials.size(), solved.size());
  std::vector<std::size_t> done;
  for (std::size_t s = 0; s < trials.size(); ++s)
    if (solved[s]) done.push_back(trials[s]);
  const std::size_t need = (trials.size() + 1) / 2;
  if (need == 0 || done.size() < need) return std::nullopt;
  std::sort(done.begin(), done.end());
  return done[need - 1];
}

namespace {

MethodSummary summarize(Method method, std::vector<ProblemOutcome> outcomes, std::size_t max_trials) {
  MethodSummary m;
  m.method = method;
  m.outcomes = std::move(outcomes);
  std::vector<std::size_t> trials;
  std::vector<bool> solved;
  for (const auto &o : m.outcomes) {
    trials.push_back(o.trials);
    solved.push_back(o.solved);
  }
  m.half = half_class_trials(trials, solved);
  m.c1 = criterion_C1(trials, solved, max_trials);
  m.c2 = m.c1.argmax ? m.outcomes[m.c1.argmax - 1].boxes : 0;
  m.c3 = criterion_C3(trials, solved, max_trials);
  return m;
}

std::string ratio(double competitor, double reference, bool competitor_failed, bool reference_failed) {
  if (reference <= 0.0) return "n/a";
  std::string prefix;
  if (competitor_failed && !reference_failed) prefix = "> ";
  else if (reference_failed && !competitor_failed) prefix = "< ";
  else if (competitor_failed && reference_failed) prefix = "~ ";
  return prefix + fmt("%.2f", competitor / reference);
}

double effective_c1(const CriterionC1 &c) {
  return static_cast<double>(c.unsolved ? c.budget : c.value);
}

} // namespace

ClassReport run_class(std::span<const Method> methods, const ProblemClass &cls, double delta,
                      std::size_t max_trials, std::size_t workers, double epsilon) {
  if (methods.empty()) throw std::invalid_argument("run_class needs at least one method");
  cls.validate();
  ClassReport report;
  report.cls = cls;
  report.delta = delta;
  report.max_trials = max_trials;
  report.epsilon = epsilon;

  const std::size_t n_problems = cls.count;
  const std::size_t n_methods = methods.size();
  std::vector<std::optional<ProblemOutcome>> cells(n_problems * n_methods);
  std::vector<std::string> failure(n_problems);

  auto work = [&](std::size_t p) {
    const std::size_t index = p + 1;
    Problem problem;
    try {
      problem = generate(cls, index);
    } catch (const std::exception &e) {
      failure[p] = "problem " + std::to_string(index) + " skipped: " + e.what();
      return;
    }
    OptConfig cfg;
    cfg.epsilon = epsilon;
    cfg.max_trials = max_trials;
    cfg.target = StopTarget{problem.known_opt->x, delta};
    for (std::size_t m = 0; m < n_methods; ++m) {
      try {
        const RunReport r = run_method(methods[m], problem, cfg);
        cells[p * n_methods + m] = ProblemOutcome{index, r.trials, r.boxes,
                                                  r.stop_reason == StopReason::target_found,
                                                  r.f_min, r.stop_reason};
      } catch (const EvaluationError &e) {
        failure[p] = "problem " + std::to_string(index) + " skipped: " + e.what();
        return;
      }
    }
  };

  workers = std::max<std::size_t>(1, std::min(workers, n_problems));
  if (workers == 1) {
    for (std::size_t p = 0; p < n_problems; ++p) work(p);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t p = next++; p < n_problems; p = next++) work(p);
      });
    for (auto &t : pool) t.join();
  }

  for (std::size_t p = 0; p < n_problems; ++p) {
    if (!failure[p].empty()) report.warnings.push_back(failure[p]);
    else report.valid.push_back(p + 1);
  }
  for (std::size_t m = 0; m < n_methods; ++m) {
    std::vector<ProblemOutcome> outcomes;
    for (std::size_t index : report.valid) outcomes.push_back(*cells[(index - 1) * n_methods + m]);
    report.methods.push_back(summarize(methods[m], std::move(outcomes), max_trials));
  }
  const MethodSummary &ref = report.methods.front();
  for (std::size_t m = 1; m < n_methods; ++m) {
    const MethodSummary &other = report.methods[m];
    std::vector<std::size_t> a, b;
    for (std::size_t k = 0; k < ref.outcomes.size(); ++k) {
      a.push_back(ref.outcomes[k].trials);
      b.push_back(other.outcomes[k].trials);
    }
    Comparison c{ref.method, other.method, criterion_C4(a, b), {}, {}};
    c.c1_ratio = ratio(effective_c1(other.c1), effective_c1(ref.c1), other.c1.unsolved > 0,
                       ref.c1.unsolved > 0);
    c.c3_ratio = ratio(other.c3.value, ref.c3.value, other.c3.lower_estimate, ref.c3.lower_estimate);
    report.comparisons.push_back(c);
  }
  return report;
}

std::string render_text(const ClassReport &r) {
  std::ostringstream out;
  char line[256];
  out << "class seed=" << r.cls.seed << " N=" << r.cls.dimension << ' ' << to_string(r.cls.difficulty)
      << " problems=" << r.valid.size() << '/' << r.cls.count << " delta=" << fmt("%g", r.delta)
      << " P_max=" << r.max_trials << " eps=" << fmt("%g", r.epsilon) << '\n';
  for (const auto &w : r.warnings) out << "warning: " << w << '\n';
  std::snprintf(line, sizeof line, "%-8s %14s %22s %6s %12s %16s\n", "method", "50%", "100% (C1)",
                "s*", "C2 (m_s*)", "C3 (avg)");
  out << line;
  for (const MethodSummary &m : r.methods) {
    const std::string half =
        m.half ? std::to_string(*m.half) : "> " + std::to_string(r.max_trials);
    std::snprintf(line, sizeof line, "%-8s %14s %22s %6zu %12zu %16s\n", to_string(m.method),
                  half.c_str(), m.c1.to_string().c_str(), m.c1.argmax, m.c2,
                  m.c3.to_string().c_str());
    out << line;
  }
  if (!r.comparisons.empty()) {
    std::snprintf(line, sizeof line, "%-20s %12s %12s %12s\n", "comparison", "C4 p:q", "C1 ratio",
                  "C3 ratio");
    out << line;
    for (const Comparison &c : r.comparisons) {
      const std::string name = std::string(to_string(c.reference)) + " vs " + to_string(c.competitor);
      const std::string pq = std::to_string(c.c4.p) + ":" + std::to_string(c.c4.q);
      std::snprintf(line, sizeof line, "%-20s %12s %12s %12s\n", name.c_str(), pq.c_str(),
                    c.c1_ratio.c_str(), c.c3_ratio.c_str());
      out << line;
    }
  }
  return out.str();
}

std::string render_csv(const ClassReport &r) {
  std::ostringstream out;
  out << "method,index,trials,boxes,solved,f_min,stop_reason\n";
  for (const MethodSummary &m : r.methods)
    for (const ProblemOutcome &o : m.outcomes)
      out << to_string(m.method) << ',' << o.index << ',' << o.trials << ',' << o.boxes << ','
          << (o.solved ? 1 : 0) << ',' << fmt("%.17g", o.f_min) << ',' << to_string(o.stop_reason)
          << '\n';
  return out.str();
}

std::string render_json(const ClassReport &r) {
  using nlohmann::json;
  json j;
  j["class"] = {{"seed", r.cls.seed},
                {"dimension", r.cls.dimension},
                {"count", r.cls.count},
                {"difficulty", to_string(r.cls.difficulty)}};
  j["delta"] = r.delta;
  j["max_trials"] = r.max_trials;
  j["epsilon"] = r.epsilon;
  j["valid"] = r.valid;
  j["warnings"] = r.warnings;
  j["methods"] = json::array();
  for (const MethodSummary &m : r.methods) {
    json jm;
    jm["method"] = to_string(m.method);
    jm["half"] = m.half ? json(*m.half) : json();
    jm["c1"] = {{"value", m.c1.value}, {"argmax", m.c1.argmax}, {"unsolved", m.c1.unsolved},
                {"text", m.c1.to_string()}};
    jm["c2"] = m.c2;
    jm["c3"] = {{"value", m.c3.value}, {"lower_estimate", m.c3.lower_estimate},
                {"text", m.c3.to_string()}};
    jm["problems"] = json::array();
    for (const ProblemOutcome &o : m.outcomes)
      jm["problems"].push_back({{"index", o.index},
                                {"trials", o.trials},
                                {"boxes", o.boxes},
                                {"solved", o.solved},
                                {"f_min", o.f_min},
                                {"stop_reason", to_string(o.stop_reason)}});
    j["methods"].push_back(jm);
  }
  j["comparisons"] = json::array();
  for (const Comparison &c : r.comparisons)
    j["comparisons"].push_back({{"reference", to_string(c.reference)},
                                {"competitor", to_string(c.competitor)},
                                {"p", c.c4.p},
                                {"q", c.c4.q},
                                {"c1_ratio", c.c1_ratio},
                                {"c3_ratio", c.c3_ratio}});
  return j.dump(2) + "\n";
}

} // namespace lipgrad
