#include "lipgrad/direct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "lipgrad/selection.hpp"

namespace lipgrad {

namespace {

double half_diagonal(std::vector<int> levels) {
  // Summed in sorted order so that boxes of one size class get identical d.
  std::sort(levels.begin(), levels.end());
  double sum = 0.0;
  for (int k : levels) {
    const double side = std::pow(3.0, -k);
    sum += side * side;
  }
  return 0.5 * std::sqrt(sum);
}

// Center-to-boundary distance in the max norm: half the longest side.
double half_longest_side(const std::vector<int> &levels) {
  return 0.5 * std::pow(3.0, -*std::min_element(levels.begin(), levels.end()));
}

class DirectSearch {
public:
  DirectSearch(const Problem &problem, const OptConfig &config, DirectVariant variant)
      : problem_(problem), config_(config), variant_(variant) {
    problem.validate();
    config.validate();
  }

  RunReport run() {
    const std::size_t n = problem_.dim();
    CenterBox root;
    root.center.assign(n, 0.5);
    root.levels.assign(n, 0);
    root.d = measure(root.levels);
    initial_d_ = half_diagonal(root.levels);
    const auto f0 = evaluate(root.center);
    if (!f0) return report();
    root.f_center = *f0;
    add(std::move(root));
    check_diagonal();

    while (!stop_) {
      const std::size_t before = trials_;
      iterate();
      ++iterations_;
      if (history_.empty() || history_.back().trials != trials_)
        history_.push_back(HistoryPoint{trials_, f_min_, 4.0 * max_half_diagonal() * max_half_diagonal()});
      if (!stop_ && trials_ == before) stop_ = StopReason::resolution;
    }
    return report();
  }

private:
  // The original method groups boxes by diagonal; the locally biased one by
  // longest side, which puts more boxes into each class.
  double measure(const std::vector<int> &levels) const {
    return variant_ == DirectVariant::original ? half_diagonal(levels) : half_longest_side(levels);
  }
  double max_half_diagonal() const { return *diagonals_.rbegin(); }

  std::optional<double> evaluate(const Point &unit) {
    if (stop_) return std::nullopt;
    Point x(unit.size());
    for (std::size_t j = 0; j < unit.size(); ++j)
      x[j] = problem_.lower[j] + unit[j] * (problem_.upper[j] - problem_.lower[j]);
    const double f = problem_.value(x);
    ++trials_;
    if (trials_ == 1 || f < f_min_) {
      f_min_ = f;
      x_min_ = x;
    }
    if (config_.record_trace)
      trace_.push_back(TraceRecord{trials_, x, f, f_min_, Phase::direct});
    if (config_.target && target_reached(x, *config_.target, problem_.lower, problem_.upper))
      stop_ = StopReason::target_found;
    else if (trials_ >= config_.max_trials)
      stop_ = StopReason::budget;
    return f;
  }

  void add(CenterBox box) {
    box.id = boxes_.size();
    groups_[box.d].insert({box.f_center, box.id});
    diagonals_.insert(half_diagonal(box.levels));
    boxes_.push_back(std::move(box));
  }

  void check_diagonal() {
    if (!stop_ && config_.diagonal_fraction && max_half_diagonal() <= *config_.diagonal_fraction * initial_d_)
      stop_ = StopReason::diagonal;
  }

  void iterate() {
    std::vector<Dot> dots;
    for (const auto &[d, members] : groups_) {
      const double best = members.begin()->first;
      for (const auto &[f, id] : members) {
        if (f != best) break;
        const auto &lv = boxes_[id].levels;
        dots.push_back(Dot{id, d, f, *std::min_element(lv.begin(), lv.end())});
        if (variant_ == DirectVariant::locally_biased) break;
      }
    }
    const HullResult hull = nondominated(dots);
    const double xi = xi_value(f_min_, config_.epsilon);
    const std::vector<BoxId> kept = improvement_filter(hull, f_min_, xi);
    if (config_.on_selection) config_.on_selection(make_snapshot(dots, hull, kept, f_min_, xi));
    for (BoxId id : kept) {
      if (stop_) break;
      divide(id);
      check_diagonal();
    }
  }

  void divide(BoxId id) {
    const CenterBox parent = boxes_[id];
    const int kmin = *std::min_element(parent.levels.begin(), parent.levels.end());
    const double delta = std::pow(3.0, -(kmin + 1));

    struct Probe {
      std::size_t axis;
      double w;
      double f_plus, f_minus;
    };
    std::vector<Probe> probes;
    for (std::size_t j = 0; j < parent.levels.size(); ++j) {
      if (parent.levels[j] != kmin) continue;
      Point plus = parent.center, minus = parent.center;
      plus[j] += delta;
      minus[j] -= delta;
      const auto fp = evaluate(plus);
      if (!fp) return;
      const auto fm = evaluate(minus);
      if (!fm) return;
      probes.push_back(Probe{j, std::min(*fp, *fm), *fp, *fm});
      if (stop_) return; // partial division is abandoned with the run
    }
    std::stable_sort(probes.begin(), probes.end(),
                     [](const Probe &x, const Probe &y) { return x.w < y.w; });

    // Remove the parent from its size class before its levels change.
    auto g = groups_.find(parent.d);
    g->second.erase({parent.f_center, id});
    if (g->second.empty()) groups_.erase(g);
    diagonals_.erase(diagonals_.find(half_diagonal(parent.levels)));

    std::vector<int> levels = parent.levels;
    for (const Probe &pr : probes) {
      levels[pr.axis] += 1;
      for (int sign : {+1, -1}) {
        CenterBox child;
        child.center = parent.center;
        child.center[pr.axis] += sign * delta;
        child.levels = levels;
        child.f_center = sign > 0 ? pr.f_plus : pr.f_minus;
        child.d = measure(levels);
        add(std::move(child));
      }
    }
    CenterBox &mid = boxes_[id];
    mid.levels = levels;
    mid.d = measure(levels);
    groups_[mid.d].insert({mid.f_center, id});
    diagonals_.insert(half_diagonal(levels));
  }

  RunReport report() const {
    RunReport r;
    r.method = variant_ == DirectVariant::original ? "direct" : "directl";
    r.trials = trials_;
    r.boxes = boxes_.size();
    r.f_min = f_min_;
    r.x_min = x_min_;
    r.history = history_;
    r.stop_reason = stop_.value_or(StopReason::budget);
    r.iterations = iterations_;
    r.objective_evaluations = trials_;
    r.gradient_evaluations = 0;
    r.trace = trace_;
    return r;
  }

  const Problem &problem_;
  const OptConfig &config_;
  DirectVariant variant_;
  std::vector<CenterBox> boxes_;
  std::map<double, std::set<std::pair<double, std::size_t>>> groups_; // keyed by measure()
  std::multiset<double> diagonals_; // half-diagonal of every box
  std::size_t trials_ = 0;
  std::size_t iterations_ = 0;
  double f_min_ = 0.0;
  Point x_min_;
  double initial_d_ = 0.0;
  std::optional<StopReason> stop_;
  std::vector<HistoryPoint> history_;
  std::vector<TraceRecord> trace_;
};

} // namespace

RunReport direct_search(const Problem &problem, const OptConfig &config, DirectVariant variant) {
  DirectSearch search(problem, config, variant);
  return search.run();
}

} // namespace lipgrad
