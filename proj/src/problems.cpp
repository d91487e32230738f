#include "lipgrad/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace lipgrad {

const char *to_string(Difficulty d) { return d == Difficulty::simple ? "simple" : "hard"; }

Difficulty parse_difficulty(const std::string &text) {
  if (text == "simple") return Difficulty::simple;
  if (text == "hard") return Difficulty::hard;
  throw std::invalid_argument("difficulty must be simple or hard, got '" + text + "'");
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

ProblemClass ProblemClass::standard(std::size_t dimension, Difficulty difficulty,
                                    std::uint64_t seed, std::size_t count) {
  ProblemClass c;
  c.seed = seed;
  c.dimension = dimension;
  c.count = count;
  c.difficulty = difficulty;
  c.num_minima = 10;
  c.global_value = -1.0;
  c.paraboloid_min = 0.0;
  const bool simple = difficulty == Difficulty::simple;
  c.global_distance = simple && dimension >= 3 ? 0.66 : 0.9;
  c.global_radius = simple ? (dimension >= 5 ? 0.3 : 0.2) : (dimension == 2 ? 0.1 : 0.2);
  c.value_gap = simple ? 0.3 : 0.1;
  return c;
}

void ProblemClass::validate() const {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (count < 1) throw std::invalid_argument("class needs at least one problem");
  if (num_minima < 1) throw std::invalid_argument("need at least one minimum");
  if (!(global_radius > 0.0) || !(global_distance > global_radius))
    throw std::invalid_argument("need 0 < global_radius < global_distance");
  if (!(global_value < paraboloid_min))
    throw std::invalid_argument("global value must lie below the paraboloid minimum");
  if (!(value_gap > 0.0) || !(value_gap < paraboloid_min - global_value))
    throw std::invalid_argument("value gap must lie in (0, paraboloid_min - global_value)");
}

namespace {

constexpr double kLo = -1.0;
constexpr double kHi = 1.0;
constexpr int kPlacementTries = 10000;

double dist(const Point &x, const Point &y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
  return std::sqrt(s);
}

bool in_domain(const Point &x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= kLo && v <= kHi; });
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Value and gradient of the planted function. Balls are disjoint, so at most
// one of them covers x.
struct PlantedFunction {
  GeneratedLayout layout;
  double t = 0.0; // paraboloid minimum value

  const BallInfo *covering(std::span<const double> x) const {
    for (const BallInfo &ball : layout.balls) {
      double r2 = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) r2 += (x[j] - ball.center[j]) * (x[j] - ball.center[j]);
      if (r2 < ball.radius * ball.radius) return &ball;
    }
    return nullptr;
  }

  double value(std::span<const double> x) const {
    const BallInfo *ball = covering(x);
    if (!ball) {
      double s = t;
      for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - layout.vertex[j]) * (x[j] - layout.vertex[j]);
      return s;
    }
    // With w = x - M, r = |w|, s = <w, T - M>, A = |T - M|^2 + t - f_M:
    // h = 2/rho^2 s r^2 - 2A/rho^3 r^3 + (1 + 3A/rho^2) r^2 - 4/rho s r + f_M,
    // which matches the paraboloid and its gradient on the sphere r = rho.
    const double rho = ball->radius;
    double r2 = 0.0, s = 0.0, tm2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double w = x[j] - ball->center[j];
      const double tm = layout.vertex[j] - ball->center[j];
      r2 += w * w;
      s += w * tm;
      tm2 += tm * tm;
    }
    const double r = std::sqrt(r2);
    const double A = tm2 + t - ball->value;
    return 2.0 / (rho * rho) * s * r2 - 2.0 * A / (rho * rho * rho) * r2 * r +
           (1.0 + 3.0 * A / (rho * rho)) * r2 - 4.0 / rho * s * r + ball->value;
  }

  void gradient(std::span<const double> x, std::span<double> g) const {
    const BallInfo *ball = covering(x);
    if (!ball) {
      for (std::size_t j = 0; j < x.size(); ++j) g[j] = 2.0 * (x[j] - layout.vertex[j]);
      return;
    }
    const double rho = ball->radius;
    double r2 = 0.0, s = 0.0, tm2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double w = x[j] - ball->center[j];
      const double tm = layout.vertex[j] - ball->center[j];
      r2 += w * w;
      s += w * tm;
      tm2 += tm * tm;
    }
    const double r = std::sqrt(r2);
    if (r == 0.0) {
      std::fill(g.begin(), g.end(), 0.0);
      return;
    }
    const double A = tm2 + t - ball->value;
    const double cw = 4.0 / (rho * rho) * s - 6.0 * A / (rho * rho * rho) * r +
                      2.0 * (1.0 + 3.0 * A / (rho * rho)) - 4.0 / rho * s / r;
    const double ct = 2.0 / (rho * rho) * r2 - 4.0 / rho * r;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double w = x[j] - ball->center[j];
      const double tm = layout.vertex[j] - ball->center[j];
      g[j] = cw * w + ct * tm;
    }
  }
};

} // namespace

GeneratedLayout generate_layout(const ProblemClass &cls, std::size_t index) {
  cls.validate();
  if (index < 1 || index > cls.count)
    throw std::out_of_range("problem index " + std::to_string(index) + " outside 1.." +
                            std::to_string(cls.count));
  const std::size_t n = cls.dimension;
  Rng rng(mix(cls.seed, index));
  GeneratedLayout layout;

  auto random_point = [&] {
    Point x(n);
    for (double &v : x) v = rng.uniform(kLo, kHi);
    return x;
  };

  // Global minimizer: paraboloid vertex plus a random direction scaled to
  // global_distance, both inside the domain.
  bool placed = false;
  for (int attempt = 0; attempt < kPlacementTries && !placed; ++attempt) {
    layout.vertex = random_point();
    Point dir(n);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double &v : dir) {
        v = rng.uniform(-1.0, 1.0);
        norm2 += v * v;
      }
    } while (norm2 > 1.0 || norm2 < 1e-4);
    const double scale = cls.global_distance / std::sqrt(norm2);
    Point m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = layout.vertex[j] + scale * dir[j];
    if (in_domain(m)) {
      layout.balls.push_back(BallInfo{m, cls.global_radius, cls.global_value});
      placed = true;
    }
  }
  if (!placed) throw GeneratorError("cannot place the global minimizer inside the domain");

  const double r_min = 0.25 * cls.global_radius;
  for (std::size_t i = 1; i < cls.num_minima; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < kPlacementTries && !ok; ++attempt) {
      Point m = random_point();
      if (dist(m, layout.balls[0].center) < cls.global_radius + r_min) continue;
      if (dist(m, layout.vertex) < 2.0 * r_min) continue;
      bool clear = true;
      for (std::size_t k = 1; k < layout.balls.size() && clear; ++k)
        clear = dist(m, layout.balls[k].center) >= 2.0 * r_min;
      if (!clear) continue;
      layout.balls.push_back(BallInfo{std::move(m), 0.0, 0.0});
      ok = true;
    }
    if (!ok) throw GeneratorError("cannot place local minimizer " + std::to_string(i + 1));
  }

  // Radii of the secondary balls: disjoint from each other and from the
  // global basin, and leaving the paraboloid vertex outside.
  for (std::size_t i = 1; i < layout.balls.size(); ++i) {
    BallInfo &ball = layout.balls[i];
    double rho = dist(ball.center, layout.balls[0].center) - cls.global_radius;
    rho = std::min(rho, 0.5 * dist(ball.center, layout.vertex));
    for (std::size_t k = 1; k < layout.balls.size(); ++k)
      if (k != i) rho = std::min(rho, 0.5 * dist(ball.center, layout.balls[k].center));
    ball.radius = rho;
    // A value below the paraboloid's minimum on the sphere makes the center a
    // strict local minimizer of the bump.
    const double boundary_min =
        std::pow(dist(ball.center, layout.vertex) - rho, 2) + cls.paraboloid_min;
    ball.value = std::max(boundary_min - rho, cls.global_value + cls.value_gap);
  }
  return layout;
}

Problem generate(const ProblemClass &cls, std::size_t index) {
  auto fn = std::make_shared<PlantedFunction>();
  fn->layout = generate_layout(cls, index);
  fn->t = cls.paraboloid_min;
  Problem p;
  p.name = "class" + std::to_string(cls.seed) + "_" + std::to_string(cls.dimension) + "d_" +
           to_string(cls.difficulty) + "_" + std::to_string(index);
  p.lower.assign(cls.dimension, kLo);
  p.upper.assign(cls.dimension, kHi);
  p.f = [fn](std::span<const double> x) { return fn->value(x); };
  p.grad = [fn](std::span<const double> x, std::span<double> g) { fn->gradient(x, g); };
  p.known_opt = KnownOptimum{fn->layout.balls[0].center, cls.global_value};
  return p;
}

double trig_axis_minimizer() {
  constexpr double pi = std::numbers::pi;
  auto phi = [](double t) { return t * t + std::sin(5.0 * pi * t) / 10.0; };
  double best = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double t = i / 10000.0;
    if (phi(t) < phi(best)) best = t;
  }
  for (int it = 0; it < 50; ++it) {
    const double d1 = 2.0 * best + 0.5 * pi * std::cos(5.0 * pi * best);
    const double d2 = 2.0 - 2.5 * pi * pi * std::sin(5.0 * pi * best);
    best -= d1 / d2;
  }
  return best;
}

namespace {

Problem quadratic(std::string name, Point lower, Point upper, Point center,
                  std::vector<std::vector<double>> A, double K) {
  // f(x) = (x - c)^T A (x - c) with symmetric positive definite A.
  Problem p;
  p.name = std::move(name);
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  p.f = [A, center](std::span<const double> x) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        v += (x[i] - center[i]) * A[i][j] * (x[j] - center[j]);
    return v;
  };
  p.grad = [A, center](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      g[i] = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) g[i] += 2.0 * A[i][j] * (x[j] - center[j]);
    }
  };
  p.known_opt = KnownOptimum{center, 0.0};
  p.known_K = K;
  return p;
}

std::vector<std::vector<double>> identity(std::size_t n) {
  std::vector<std::vector<double>> I(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1.0;
  return I;
}

Problem trig(std::size_t n) {
  constexpr double pi = std::numbers::pi;
  Problem p;
  p.name = "trig" + std::to_string(n) + "d";
  p.lower.assign(n, 0.0);
  p.upper.assign(n, 1.0);
  p.f = [](std::span<const double> x) {
    double v = 0.0;
    for (double t : x) v += t * t + std::sin(5.0 * pi * t) / 10.0;
    return v;
  };
  p.grad = [](std::span<const double> x, std::span<double> g) {
    for (std::size_t j = 0; j < x.size(); ++j) g[j] = 2.0 * x[j] + 0.5 * pi * std::cos(5.0 * pi * x[j]);
  };
  const double t = trig_axis_minimizer();
  const double ft = t * t + std::sin(5.0 * pi * t) / 10.0;
  p.known_opt = KnownOptimum{Point(n, t), static_cast<double>(n) * ft};
  p.known_K = 2.0 + 2.5 * pi * pi;
  return p;
}

} // namespace

std::vector<Problem> analytic_suite() {
  std::vector<Problem> suite;
  suite.push_back(quadratic("sphere1d", {-1.0}, {1.0}, {0.0}, identity(1), 2.0));
  suite.push_back(quadratic("quadratic2d", {0.0, 0.0}, {1.0, 1.0}, {0.3, 0.7}, identity(2), 2.0));
  suite.push_back(quadratic("quadratic3d", {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {0.2, 0.55, 0.8},
                            identity(3), 2.0));
  // Eigenvalues of [[3,1],[1,2]] are (5 +- sqrt 5) / 2.
  suite.push_back(quadratic("rotated2d", {-1.0, -1.0}, {1.0, 1.0}, {0.25, -0.4},
                            {{3.0, 1.0}, {1.0, 2.0}}, 5.0 + std::sqrt(5.0)));
  suite.push_back(trig(1));
  suite.push_back(trig(2));
  return suite;
}

Problem analytic_problem(const std::string &name) {
  for (Problem &p : analytic_suite())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown builtin problem '" + name + "'");
}

double fd_check(const Problem &problem, std::size_t samples, double step_fraction,
                std::uint64_t seed) {
  if (!(step_fraction > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const std::size_t n = problem.dim();
  Rng rng(seed);
  double worst = 0.0;
  Point x(n), xp(n), xm(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      const double h = step_fraction * (problem.upper[j] - problem.lower[j]);
      x[j] = rng.uniform(problem.lower[j] + h, problem.upper[j] - h);
    }
    const std::vector<double> g = problem.gradient(x);
    for (std::size_t j = 0; j < n; ++j) {
      const double h = step_fraction * (problem.upper[j] - problem.lower[j]);
      xp = x;
      xm = x;
      xp[j] += h;
      xm[j] -= h;
      const double fd = (problem.value(xp) - problem.value(xm)) / (xp[j] - xm[j]);
      worst = std::max(worst, std::abs(g[j] - fd) / std::max(1.0, std::abs(g[j])));
    }
  }
  return worst;
}

std::string class_manifest(const ProblemClass &cls) {
  using nlohmann::json;
  json j;
  j["format"] = "lipgrad-class/1";
  j["seed"] = cls.seed;
  j["dimension"] = cls.dimension;
  j["count"] = cls.count;
  j["difficulty"] = to_string(cls.difficulty);
  j["num_minima"] = cls.num_minima;
  j["global_distance"] = cls.global_distance;
  j["global_radius"] = cls.global_radius;
  j["value_gap"] = cls.value_gap;
  j["global_value"] = cls.global_value;
  j["paraboloid_min"] = cls.paraboloid_min;
  j["problems"] = json::array();
  for (std::size_t i = 1; i <= cls.count; ++i) {
    json entry;
    entry["index"] = i;
    try {
      const Problem p = generate(cls, i);
      entry["x_star"] = p.known_opt->x;
      entry["f_star"] = p.known_opt->f;
    } catch (const GeneratorError &e) {
      entry["error"] = e.what();
    }
    j["problems"].push_back(entry);
  }
  return j.dump(2) + "\n";
}

ProblemClass parse_manifest(const std::string &text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw std::invalid_argument(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (j.value("format", "") != "lipgrad-class/1")
    throw std::invalid_argument("manifest format must be lipgrad-class/1");
  ProblemClass cls;
  try {
    cls.seed = j.at("seed").get<std::uint64_t>();
    cls.dimension = j.at("dimension").get<std::size_t>();
    cls.count = j.at("count").get<std::size_t>();
    cls.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
    cls.num_minima = j.at("num_minima").get<std::size_t>();
    cls.global_distance = j.at("global_distance").get<double>();
    cls.global_radius = j.at("global_radius").get<double>();
    cls.value_gap = j.at("value_gap").get<double>();
    cls.global_value = j.at("global_value").get<double>();
    cls.paraboloid_min = j.at("paraboloid_min").get<double>();
  } catch (const json::exception &e) {
    throw std::invalid_argument(std::string("manifest field error: ") + e.what());
  }
  cls.validate();
  if (j.contains("problems")) {
    for (const json &entry : j["problems"]) {
      if (!entry.contains("x_star")) continue;
      const std::size_t index = entry.at("index").get<std::size_t>();
      const Problem p = generate(cls, index);
      if (entry.at("x_star").get<Point>() != p.known_opt->x ||
          entry.at("f_star").get<double>() != p.known_opt->f)
        throw std::invalid_argument("manifest problem " + std::to_string(index) +
                                    " does not match its regenerated minimizer");
    }
  }
  return cls;
}

} // namespace lipgrad
