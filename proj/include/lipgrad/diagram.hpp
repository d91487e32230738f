#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lipgrad/partition.hpp"
#include "lipgrad/run.hpp"
#include "lipgrad/selection.hpp"

namespace lipgrad {

/// Snapshot line of a partition box, coordinates relative to the domain.
struct BoxLine {
  BoxId id = 0;
  int s = 0;
  GridVertex a;
  GridVertex b;
};

/// Line-oriented run trace:
///
///   # lipgrad trace v1
///   method <name>
///   domain <lower,...> <upper,...>
///   trial <index> <x,...> <f> <f_min> <phase>
///   box <id> <s> <a,...> <b,...>
///   dot <id> <d> <F> <s> <nondominated 0|1> <subdivided 0|1>
///   hull <f_min> <xi>
///   breakpoint <slope>
struct TraceFile {
  std::string method;
  Point lower;
  Point upper;
  std::vector<TraceRecord> trials;
  std::vector<BoxLine> boxes;
  std::optional<HullSnapshot> hull;

  std::size_t dim() const { return lower.size(); }
};

void write_trace_file(std::ostream &out, const TraceFile &trace);
/// Throws std::invalid_argument with the line number on malformed input.
TraceFile parse_trace_file(std::istream &in);

/// Collects the final partition of a run into trace form.
std::vector<BoxLine> snapshot_boxes(const Partition &partition);

enum class DiagramKind { partition2d, hull };
DiagramKind parse_diagram_kind(const std::string &text);

/// Boxes outlined with numbered trial points. Throws std::invalid_argument
/// unless the trace is two-dimensional, and std::logic_error if it lists more
/// distinct trial points than boxes.
std::string render_partition_svg(const TraceFile &trace);
/// (d, F) scatter: nondominated dots black, others white, hull polyline and a
/// slope ray from each hull dot to the vertical axis.
std::string render_hull_svg(const HullSnapshot &snap);

/// Renders the requested kind and writes it to path.
void emit_diagram(const TraceFile &trace, DiagramKind kind, const std::string &path);

} // namespace lipgrad
