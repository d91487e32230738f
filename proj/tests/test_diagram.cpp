#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lipgrad/diagram.hpp"
#include "lipgrad/optimizer.hpp"
#include "lipgrad/problems.hpp"

using namespace lipgrad;

namespace {

std::size_t count(const std::string &text, const std::string &needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TraceFile traced_run(const Problem &p, std::size_t budget) {
  OptConfig c;
  c.max_trials = budget;
  c.record_trace = true;
  TraceFile t;
  c.on_selection = [&](const HullSnapshot &s) { t.hull = s; };
  TwoPhaseOptimizer opt(p, c);
  const RunReport r = opt.run();
  t.method = "new";
  t.lower = p.lower;
  t.upper = p.upper;
  t.trials = r.trace;
  t.boxes = snapshot_boxes(opt.partition());
  return t;
}

HullSnapshot three_dots() {
  // Two hull dots and one dominated dot above the segment joining them.
  HullSnapshot s;
  s.dots = {Dot{0, 0.1, 1.0, 3}, Dot{1, 1.0, 0.0, 1}, Dot{2, 0.5, 2.0, 2}};
  s.nondominated = {true, true, false};
  s.subdivided = {false, true, false};
  s.breakpoints = {1.0 / 0.9};
  s.f_min = 0.5;
  s.xi = 0.01;
  return s;
}

} // namespace

TEST(TraceFile, RoundTrip) {
  const TraceFile t = traced_run(analytic_problem("trig2d"), 30);
  std::stringstream buf;
  write_trace_file(buf, t);
  const TraceFile back = parse_trace_file(buf);
  EXPECT_EQ(back.method, "new");
  EXPECT_EQ(back.lower, t.lower);
  EXPECT_EQ(back.upper, t.upper);
  ASSERT_EQ(back.trials.size(), t.trials.size());
  for (std::size_t k = 0; k < t.trials.size(); ++k) {
    EXPECT_EQ(back.trials[k].trial, t.trials[k].trial);
    EXPECT_EQ(back.trials[k].x, t.trials[k].x);
    EXPECT_EQ(back.trials[k].f, t.trials[k].f);
    EXPECT_EQ(back.trials[k].phase, t.trials[k].phase);
  }
  ASSERT_EQ(back.boxes.size(), t.boxes.size());
  for (std::size_t k = 0; k < t.boxes.size(); ++k) {
    EXPECT_EQ(back.boxes[k].id, t.boxes[k].id);
    EXPECT_EQ(back.boxes[k].s, t.boxes[k].s);
    EXPECT_EQ(back.boxes[k].a, t.boxes[k].a);
    EXPECT_EQ(back.boxes[k].b, t.boxes[k].b);
  }
  ASSERT_TRUE(back.hull && t.hull);
  EXPECT_EQ(back.hull->dots.size(), t.hull->dots.size());
  EXPECT_EQ(back.hull->nondominated, t.hull->nondominated);
  EXPECT_EQ(back.hull->subdivided, t.hull->subdivided);
  EXPECT_EQ(back.hull->breakpoints.size(), t.hull->breakpoints.size());
  std::stringstream again;
  write_trace_file(again, back);
  EXPECT_EQ(again.str(), buf.str());
}

TEST(TraceFile, MalformedLinesReportTheirNumber) {
  std::istringstream bad("# lipgrad trace v1\nmethod new\ntrial 1 0.5 nope\n");
  try {
    parse_trace_file(bad);
    FAIL() << "expected a parse error";
  } catch (const std::invalid_argument &e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::istringstream unknown("# lipgrad trace v1\nfrobnicate 1\n");
  EXPECT_THROW(parse_trace_file(unknown), std::invalid_argument);
  std::istringstream headless("method new\n");
  EXPECT_THROW(parse_trace_file(headless), std::invalid_argument);
}

TEST(PartitionDiagram, OutlinesEveryBox) {
  const TraceFile t = traced_run(analytic_problem("trig2d"), 40);
  const std::string svg = render_partition_svg(t);
  EXPECT_EQ(count(svg, "<rect data-id="), t.boxes.size());
  std::set<Point> distinct;
  for (const TraceRecord &r : t.trials) distinct.insert(r.x);
  EXPECT_LE(distinct.size(), t.boxes.size());
  EXPECT_EQ(count(svg, "<circle"), t.trials.size());
  EXPECT_EQ(svg.rfind("</svg>"), svg.size() - 7);
}

TEST(PartitionDiagram, RejectsOtherDimensions) {
  const TraceFile t = traced_run(analytic_problem("quadratic3d"), 20);
  EXPECT_THROW(render_partition_svg(t), std::invalid_argument);
  TraceFile inconsistent = traced_run(analytic_problem("quadratic2d"), 20);
  inconsistent.boxes.resize(1);
  EXPECT_THROW(render_partition_svg(inconsistent), std::logic_error);
}

TEST(HullDiagram, DotColors) {
  const std::string svg = render_hull_svg(three_dots());
  EXPECT_EQ(count(svg, "class=\"nondominated\""), 2u);
  EXPECT_EQ(count(svg, "class=\"dominated\""), 1u);
  EXPECT_EQ(count(svg, "fill=\"black\""), 2u);
  EXPECT_EQ(count(svg, "fill=\"white\"") - count(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\""), 1u);
  EXPECT_EQ(count(svg, "<polyline class=\"hull\""), 1u);
}

TEST(HullDiagram, EmptySnapshotDrawsAxesOnly) {
  const std::string svg = render_hull_svg(HullSnapshot{});
  EXPECT_NE(svg.find("class=\"axes\""), std::string::npos);
  EXPECT_EQ(count(svg, "<circle"), 0u);
}

TEST(Emit, WritesFileOfRequestedKind) {
  const auto dir = std::filesystem::temp_directory_path() / "lipgrad_diagram_test";
  std::filesystem::create_directories(dir);
  TraceFile t = traced_run(analytic_problem("quadratic2d"), 25);
  const std::string part = (dir / "p.svg").string(), hull = (dir / "h.svg").string();
  emit_diagram(t, parse_diagram_kind("partition2d"), part);
  emit_diagram(t, parse_diagram_kind("hull"), hull);
  std::ifstream a(part), b(hull);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_NE(sa.str().find("<rect data-id="), std::string::npos);
  EXPECT_NE(sb.str().find("nondominated"), std::string::npos);
  EXPECT_THROW(parse_diagram_kind("pie"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}
