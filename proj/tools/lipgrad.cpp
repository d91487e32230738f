// Command-line front end: solve, bench, diagram and make-class.
//
// Exit codes: 0 success, 1 usage or input error, 2 objective evaluation failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lipgrad/bench.hpp"
#include "lipgrad/diagram.hpp"
#include "lipgrad/direct.hpp"
#include "lipgrad/optimizer.hpp"
#include "lipgrad/problems.hpp"

namespace fs = std::filesystem;
using namespace lipgrad;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

Problem load_problem(const std::string &source, std::size_t index) {
  if (fs::is_regular_file(source)) {
    const ProblemClass cls = parse_manifest(read_file(source));
    if (index < 1 || index > cls.count)
      throw std::invalid_argument("--index must lie in 1.." + std::to_string(cls.count));
    return generate(cls, index);
  }
  return analytic_problem(source);
}

// Boxes of a run started at b live in reflected coordinates.
GridVertex unreflect(const GridVertex &v) {
  GridVertex out = v;
  for (auto &c : out.coords) c = GridFraction(pow3(c.depth()) - c.numerator(), c.depth());
  return out;
}

struct SolveArgs {
  std::string problem;
  std::size_t index = 1;
  std::string method = "new";
  double eps = 1e-4;
  std::size_t pmax = 100'000;
  double delta = 0.0;
  std::string start = "a";
  std::string trace;
};

int solve(const SolveArgs &args) {
  const Problem problem = load_problem(args.problem, args.index);
  const Method method = parse_method(args.method);
  OptConfig cfg;
  cfg.epsilon = args.eps;
  cfg.max_trials = args.pmax;
  cfg.start = args.start == "b" ? StartVertex::b : StartVertex::a;
  if (args.delta > 0.0) {
    if (!problem.known_opt) throw std::invalid_argument("--delta needs a problem with a known minimizer");
    cfg.target = StopTarget{problem.known_opt->x, args.delta};
  }
  cfg.record_trace = !args.trace.empty();
  std::optional<HullSnapshot> last_hull;
  if (cfg.record_trace) cfg.on_selection = [&](const HullSnapshot &h) { last_hull = h; };
  cfg.validate();

  TraceFile trace;
  RunReport report;
  if (method == Method::new_method) {
    TwoPhaseOptimizer opt(problem, cfg);
    report = opt.run();
    trace.boxes = snapshot_boxes(opt.partition());
    if (cfg.start == StartVertex::b)
      for (BoxLine &b : trace.boxes) {
        b.a = unreflect(b.a);
        b.b = unreflect(b.b);
      }
  } else {
    report = run_method(method, problem, cfg);
  }

  std::printf("problem   %s\nmethod    %s\ntrials    %zu\nboxes     %zu\nf_min     %.12g\nx_min    ",
              problem.name.c_str(), report.method.c_str(), report.trials, report.boxes, report.f_min);
  for (double x : report.x_min) std::printf(" %.12g", x);
  std::printf("\nstop      %s\n", to_string(report.stop_reason));

  if (!args.trace.empty()) {
    trace.method = report.method;
    trace.lower = problem.lower;
    trace.upper = problem.upper;
    trace.trials = report.trace;
    trace.hull = last_hull;
    std::ofstream f(args.trace, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + args.trace);
    write_trace_file(f, trace);
  }
  return 0;
}

struct BenchArgs {
  std::string cls;
  std::vector<std::string> methods{"new", "direct", "directl"};
  double delta = 1e-4;
  std::size_t pmax = 1'000'000;
  double eps = 1e-4;
  std::string out;
  std::size_t workers = 0;
  std::optional<std::uint64_t> seed;
};

int bench(const BenchArgs &args) {
  ProblemClass cls = parse_manifest(read_file(args.cls));
  if (args.seed) cls.seed = *args.seed;
  std::vector<Method> methods;
  for (const auto &m : args.methods) methods.push_back(parse_method(m));
  const std::size_t workers =
      args.workers ? args.workers : std::max(1u, std::thread::hardware_concurrency());
  const ClassReport report = run_class(methods, cls, args.delta, args.pmax, workers, args.eps);
  const std::string text = render_text(report);
  std::cout << text;
  if (!args.out.empty()) {
    fs::create_directories(args.out);
    write_file(fs::path(args.out) / "report.txt", text);
    write_file(fs::path(args.out) / "report.csv", render_csv(report));
    write_file(fs::path(args.out) / "report.json", render_json(report));
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gradient-based Lipschitz global optimization"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto *solve_cmd = app.add_subcommand("solve", "Minimize one problem");
  solve_cmd->add_option("--problem", sa.problem, "Class manifest file or builtin problem name")->required();
  solve_cmd->add_option("--index", sa.index, "Problem number within a manifest class (1-based)");
  solve_cmd->add_option("--method", sa.method, "new | direct | directl")
      ->check(CLI::IsMember({"new", "direct", "directl"}));
  solve_cmd->add_option("--eps", sa.eps, "Improvement threshold coefficient")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--pmax", sa.pmax, "Trial budget")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--delta", sa.delta, "Stop when within delta^(1/N) of the known minimizer")
      ->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--start", sa.start, "Start vertex a or b")->check(CLI::IsMember({"a", "b"}));
  solve_cmd->add_option("--trace", sa.trace, "Write a run trace to this path");

  BenchArgs ba;
  auto *bench_cmd = app.add_subcommand("bench", "Run methods over a problem class");
  bench_cmd->add_option("--class", ba.cls, "Class manifest")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--methods", ba.methods, "Methods; the first is the reference")
      ->delimiter(',')
      ->check(CLI::IsMember({"new", "direct", "directl"}));
  bench_cmd->add_option("--delta", ba.delta, "Accuracy coefficient")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--pmax", ba.pmax, "Trial budget per run")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--eps", ba.eps, "Improvement threshold coefficient")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--out", ba.out, "Directory for report.txt, report.csv and report.json");
  bench_cmd->add_option("--workers", ba.workers, "Worker threads (0 = hardware concurrency)");
  bench_cmd->add_option("--seed", ba.seed, "Override the manifest seed");

  std::string trace_path, kind = "partition2d", diagram_out;
  auto *diagram_cmd = app.add_subcommand("diagram", "Render a run trace as SVG");
  diagram_cmd->add_option("--trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
  diagram_cmd->add_option("--kind", kind, "partition2d | hull")
      ->check(CLI::IsMember({"partition2d", "hull"}));
  diagram_cmd->add_option("--out", diagram_out, "Output SVG path")->required();

  std::size_t mc_dim = 2, mc_count = 100;
  std::uint64_t mc_seed = 1;
  std::string mc_difficulty = "simple", mc_out;
  auto *make_cmd = app.add_subcommand("make-class", "Write a generated class manifest");
  make_cmd->add_option("--dim", mc_dim, "Dimension")->check(CLI::Range(1, 32));
  make_cmd->add_option("--difficulty", mc_difficulty, "simple | hard")
      ->check(CLI::IsMember({"simple", "hard"}));
  make_cmd->add_option("--seed", mc_seed, "Generator seed");
  make_cmd->add_option("--count", mc_count, "Number of problems")->check(CLI::PositiveNumber);
  make_cmd->add_option("--out", mc_out, "Manifest path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) return solve(sa);
    if (*bench_cmd) return bench(ba);
    if (*diagram_cmd) {
      std::ifstream in(trace_path);
      const TraceFile trace = parse_trace_file(in);
      emit_diagram(trace, parse_diagram_kind(kind), diagram_out);
      return 0;
    }
    if (*make_cmd) {
      const auto cls =
          ProblemClass::standard(mc_dim, parse_difficulty(mc_difficulty), mc_seed, mc_count);
      write_file(mc_out, class_manifest(cls));
      return 0;
    }
  } catch (const EvaluationError &e) {
    std::cerr << "evaluation failed: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
