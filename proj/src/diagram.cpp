#include "lipgrad/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lipgrad {

namespace {

constexpr const char *kHeader = "# lipgrad trace v1";

std::string join(const Point &x) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t j = 0; j < x.size(); ++j) s << (j ? "," : "") << x[j];
  return s.str();
}

Point split_point(const std::string &text) {
  Point out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(std::stod(item));
  return out;
}

Phase parse_phase(const std::string &text) {
  for (Phase p : {Phase::init, Phase::exploration, Phase::record, Phase::direct})
    if (text == to_string(p)) return p;
  throw std::invalid_argument("unknown phase '" + text + "'");
}

bool parse_flag(const std::string &text) {
  if (text == "0") return false;
  if (text == "1") return true;
  throw std::invalid_argument("expected 0 or 1, got '" + text + "'");
}

std::string num(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

struct Canvas {
  double width = 640, height = 480, margin = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double px(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
  double py(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }

  void open(std::ostringstream &out) const {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void axes(std::ostringstream &out, const std::string &xlabel, const std::string &ylabel) const {
    const double left = margin, bottom = height - margin;
    out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << width - margin << "\" y2=\""
        << bottom << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << left << "\" y2=\"" << margin
        << "\"/>\n</g>\n"
        << "<text x=\"" << width - margin << "\" y=\"" << bottom + 30
        << "\" font-size=\"12\" text-anchor=\"end\">" << xlabel << "</text>\n"
        << "<text x=\"" << left - 10 << "\" y=\"" << margin - 10 << "\" font-size=\"12\">" << ylabel
        << "</text>\n"
        << "<text x=\"" << left << "\" y=\"" << bottom + 15 << "\" font-size=\"10\">" << num(x0)
        << "</text>\n"
        << "<text x=\"" << width - margin << "\" y=\"" << bottom + 15
        << "\" font-size=\"10\" text-anchor=\"end\">" << num(x1) << "</text>\n"
        << "<text x=\"" << left - 5 << "\" y=\"" << bottom << "\" font-size=\"10\" text-anchor=\"end\">"
        << num(y0) << "</text>\n"
        << "<text x=\"" << left - 5 << "\" y=\"" << margin
        << "\" font-size=\"10\" text-anchor=\"end\">" << num(y1) << "</text>\n";
  }
};

} // namespace

void write_trace_file(std::ostream &out, const TraceFile &trace) {
  out << kHeader << '\n';
  out << "method " << (trace.method.empty() ? "unknown" : trace.method) << '\n';
  if (!trace.lower.empty()) out << "domain " << join(trace.lower) << ' ' << join(trace.upper) << '\n';
  write_trace(out, trace.trials);
  for (const BoxLine &b : trace.boxes)
    out << "box " << b.id << ' ' << b.s << ' ' << b.a.to_string() << ' ' << b.b.to_string() << '\n';
  if (trace.hull) {
    const HullSnapshot &h = *trace.hull;
    std::ostringstream s;
    s << std::setprecision(17);
    s << "hull " << h.f_min << ' ' << h.xi << '\n';
    for (std::size_t i = 0; i < h.dots.size(); ++i) {
      const Dot &d = h.dots[i];
      s << "dot " << d.box_id << ' ' << d.d << ' ' << d.F << ' ' << d.s << ' '
        << (h.nondominated[i] ? 1 : 0) << ' ' << (h.subdivided[i] ? 1 : 0) << '\n';
    }
    for (double k : h.breakpoints) s << "breakpoint " << k << '\n';
    out << s.str();
  }
}

TraceFile parse_trace_file(std::istream &in) {
  TraceFile t;
  std::string line;
  int lineno = 0;
  bool header = false;
  auto hull = [&]() -> HullSnapshot & {
    if (!t.hull) t.hull.emplace();
    return *t.hull;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line == kHeader) header = true;
      continue;
    }
    std::istringstream s(line);
    std::vector<std::string> tok;
    for (std::string w; s >> w;) tok.push_back(w);
    const std::string &kind = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n)
        throw std::invalid_argument("expected " + std::to_string(n - 1) + " fields");
    };
    try {
      if (kind == "method") {
        need(2);
        t.method = tok[1];
      } else if (kind == "domain") {
        need(3);
        t.lower = split_point(tok[1]);
        t.upper = split_point(tok[2]);
        if (t.lower.size() != t.upper.size() || t.lower.empty())
          throw std::invalid_argument("domain bounds differ in dimension");
      } else if (kind == "trial") {
        need(6);
        TraceRecord r;
        r.trial = std::stoull(tok[1]);
        r.x = split_point(tok[2]);
        r.f = std::stod(tok[3]);
        r.f_min = std::stod(tok[4]);
        r.phase = parse_phase(tok[5]);
        t.trials.push_back(std::move(r));
      } else if (kind == "box") {
        need(5);
        BoxLine b;
        b.id = std::stoull(tok[1]);
        b.s = std::stoi(tok[2]);
        b.a = GridVertex::parse(tok[3]);
        b.b = GridVertex::parse(tok[4]);
        if (b.a.dim() != b.b.dim()) throw std::invalid_argument("box corners differ in dimension");
        t.boxes.push_back(std::move(b));
      } else if (kind == "hull") {
        need(3);
        hull().f_min = std::stod(tok[1]);
        hull().xi = std::stod(tok[2]);
      } else if (kind == "dot") {
        need(7);
        Dot d;
        d.box_id = std::stoull(tok[1]);
        d.d = std::stod(tok[2]);
        d.F = std::stod(tok[3]);
        d.s = std::stoi(tok[4]);
        hull().dots.push_back(d);
        hull().nondominated.push_back(parse_flag(tok[5]));
        hull().subdivided.push_back(parse_flag(tok[6]));
      } else if (kind == "breakpoint") {
        need(2);
        hull().breakpoints.push_back(std::stod(tok[1]));
      } else {
        throw std::invalid_argument("unknown record '" + kind + "'");
      }
    } catch (const std::logic_error &e) {
      throw std::invalid_argument("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header && lineno > 0) throw std::invalid_argument("trace: missing header line");
  return t;
}

std::vector<BoxLine> snapshot_boxes(const Partition &partition) {
  std::vector<BoxLine> out;
  out.reserve(partition.box_count());
  for (const Box &b : partition.boxes()) out.push_back({b.id, b.s, b.a, b.b});
  return out;
}

DiagramKind parse_diagram_kind(const std::string &text) {
  if (text == "partition2d") return DiagramKind::partition2d;
  if (text == "hull") return DiagramKind::hull;
  throw std::invalid_argument("diagram kind must be partition2d or hull");
}

std::string render_partition_svg(const TraceFile &trace) {
  std::size_t n = trace.dim();
  if (n == 0 && !trace.boxes.empty()) n = trace.boxes.front().a.dim();
  if (n == 0 && !trace.trials.empty()) n = trace.trials.front().x.size();
  if (n != 0 && n != 2)
    throw std::invalid_argument("partition diagram needs a two-dimensional trace, got N=" +
                                std::to_string(n));
  for (const TraceRecord &r : trace.trials)
    if (r.x.size() != 2) throw std::invalid_argument("partition diagram: trial with N != 2");

  std::set<Point> distinct;
  for (const TraceRecord &r : trace.trials) distinct.insert(r.x);
  if (!trace.boxes.empty() && distinct.size() > trace.boxes.size())
    throw std::logic_error("partition diagram: more trial points than boxes");

  const Point lo = trace.lower.empty() ? Point{0.0, 0.0} : trace.lower;
  const Point hi = trace.upper.empty() ? Point{1.0, 1.0} : trace.upper;
  Canvas c;
  c.width = c.height = 560;
  c.x0 = lo[0];
  c.x1 = hi[0];
  c.y0 = lo[1];
  c.y1 = hi[1];

  std::ostringstream out;
  c.open(out);
  c.axes(out, "x1", "x2");
  out << "<g class=\"boxes\" fill=\"none\" stroke=\"black\" stroke-width=\"0.8\">\n";
  for (const BoxLine &b : trace.boxes) {
    const double ax = lo[0] + b.a[0].to_double() * (hi[0] - lo[0]);
    const double bx = lo[0] + b.b[0].to_double() * (hi[0] - lo[0]);
    const double ay = lo[1] + b.a[1].to_double() * (hi[1] - lo[1]);
    const double by = lo[1] + b.b[1].to_double() * (hi[1] - lo[1]);
    const double x = c.px(std::min(ax, bx)), y = c.py(std::max(ay, by));
    out << "<rect data-id=\"" << b.id << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
        << num(std::abs(c.px(bx) - c.px(ax))) << "\" height=\"" << num(std::abs(c.py(by) - c.py(ay)))
        << "\"/>\n";
  }
  out << "</g>\n<g class=\"trials\">\n";
  std::set<Point> labelled;
  for (const TraceRecord &r : trace.trials) {
    if (!labelled.insert(r.x).second) continue;
    const double x = c.px(r.x[0]), y = c.py(r.x[1]);
    out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"black\"/>"
        << "<text x=\"" << num(x + 4) << "\" y=\"" << num(y - 4) << "\" font-size=\"10\">" << r.trial
        << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_hull_svg(const HullSnapshot &snap) {
  Canvas c;
  if (!snap.dots.empty()) {
    double dmax = 0, fmin = snap.f_min - snap.xi, fmax = snap.f_min;
    for (const Dot &d : snap.dots) {
      dmax = std::max(dmax, d.d);
      fmin = std::min(fmin, d.F);
      fmax = std::max(fmax, d.F);
    }
    const double pad = fmax > fmin ? 0.1 * (fmax - fmin) : 1.0;
    c.x1 = dmax * 1.1;
    c.y0 = fmin - pad;
    c.y1 = fmax + pad;
  }

  std::ostringstream out;
  c.open(out);
  c.axes(out, "d", "F");
  if (snap.dots.empty()) {
    out << "</svg>\n";
    return out.str();
  }

  const double level = snap.f_min - snap.xi;
  out << "<line class=\"target\" x1=\"" << num(c.px(c.x0)) << "\" y1=\"" << num(c.py(level))
      << "\" x2=\"" << num(c.px(c.x1)) << "\" y2=\"" << num(c.py(level))
      << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < snap.dots.size(); ++i)
    if (snap.nondominated[i]) hull.push_back(i);
  std::stable_sort(hull.begin(), hull.end(),
                   [&](std::size_t l, std::size_t r) { return snap.dots[l].d < snap.dots[r].d; });

  if (hull.size() > 1) {
    out << "<polyline class=\"hull\" fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i : hull) out << num(c.px(snap.dots[i].d)) << ',' << num(c.py(snap.dots[i].F)) << ' ';
    out << "\"/>\n";
  }

  // A ray of slope K from a hull dot meets the vertical axis at its characteristic.
  out << "<g class=\"rays\" stroke=\"gray\" stroke-width=\"0.7\">\n";
  std::vector<std::size_t> distinct;
  for (std::size_t i : hull)
    if (distinct.empty() || snap.dots[distinct.back()].d != snap.dots[i].d ||
        snap.dots[distinct.back()].F != snap.dots[i].F)
      distinct.push_back(i);
  for (std::size_t k = 0; k < distinct.size() && k < snap.breakpoints.size(); ++k) {
    const Dot &d = snap.dots[distinct[k]];
    const double r = d.F - snap.breakpoints[k] * d.d;
    out << "<line x1=\"" << num(c.px(d.d)) << "\" y1=\"" << num(c.py(d.F)) << "\" x2=\""
        << num(c.px(0.0)) << "\" y2=\"" << num(c.py(r)) << "\"/>\n";
  }
  out << "</g>\n<g class=\"dots\" stroke=\"black\">\n";
  for (std::size_t i = 0; i < snap.dots.size(); ++i) {
    const Dot &d = snap.dots[i];
    out << "<circle class=\"" << (snap.nondominated[i] ? "nondominated" : "dominated")
        << "\" data-id=\"" << d.box_id << "\" cx=\"" << num(c.px(d.d)) << "\" cy=\"" << num(c.py(d.F))
        << "\" r=\"4\" fill=\"" << (snap.nondominated[i] ? "black" : "white") << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

void emit_diagram(const TraceFile &trace, DiagramKind kind, const std::string &path) {
  std::string svg;
  if (kind == DiagramKind::partition2d) {
    svg = render_partition_svg(trace);
  } else {
    svg = render_hull_svg(trace.hull ? *trace.hull : HullSnapshot{});
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << svg;
  if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace lipgrad
