#pragma once

#include <deque>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "lipgrad/bounding.hpp"
#include "lipgrad/box.hpp"
#include "lipgrad/problem.hpp"

namespace lipgrad {

/// Append-only store of trials keyed by exact grid vertex.
class VertexDatabase {
public:
  const VertexRecord *find(const GridVertex &v) const;
  /// Stores rec with the next trial index. The vertex must be new.
  const VertexRecord &insert(VertexRecord rec);
  const VertexRecord &at(TrialIndex index) const { return records_.at(index - 1); }
  std::size_t size() const { return records_.size(); }
  const std::deque<VertexRecord> &records() const { return records_; }

private:
  std::deque<VertexRecord> records_; // stable references
  std::unordered_map<GridVertex, std::size_t, GridVertexHash> index_;
};

struct GroupEntry {
  double F;
  BoxId id;
  friend auto operator<=>(const GroupEntry &, const GroupEntry &) = default;
};

struct TrisectResult {
  BoxId middle;
  BoxId low;
  BoxId high;
  const VertexRecord *new_trial; // null when u was read from the database
};

/// Partition of the search domain into boxes produced by one-point trisection.
///
/// A box [a, b] is cut by two hyperplanes orthogonal to its longest edge i:
///   u = a + 2/3 (b(i) - a(i)) e_i,   v = b + 2/3 (a(i) - b(i)) e_i,
/// giving [u, v] (keeps the parent id), [a, v] and [u, b]. Only u can be a
/// new trial; it is read from the vertex database when already known.
///
/// Holds a pointer to the problem, which must outlive the partition.
class Partition {
public:
  using Group = std::set<GroupEntry>;

  /// Creates the single box [lower, upper] and evaluates its lower corner.
  explicit Partition(const Problem &problem);
  explicit Partition(Problem &&) = delete;

  const Domain &domain() const { return domain_; }
  std::size_t dim() const { return domain_.dim(); }

  std::size_t box_count() const { return boxes_.size(); }
  const Box &box(BoxId id) const { return boxes_.at(id); }
  const std::vector<Box> &boxes() const { return boxes_; }

  const VertexRecord &get_or_eval(const GridVertex &v);
  const VertexDatabase &vertices() const { return db_; }
  std::size_t eval_count() const { return db_.size(); }
  const VertexRecord &record(const Box &box) const { return db_.at(box.anchor); }

  bool splittable(BoxId id) const;
  TrisectResult trisect(BoxId id);

  int q_inf() const { return groups_.begin()->first; }
  int q_0() const { return groups_.rbegin()->first; }
  /// Boxes bucketed by group index, each bucket ordered by (F, id).
  const std::map<int, Group> &groups() const { return groups_; }

  /// Boxes whose trial vertex is the given trial.
  std::span<const BoxId> anchored_at(TrialIndex index) const { return anchored_.at(index - 1); }

  double max_diagonal_sq() const;

  /// One line per box: "box <id> <s> <a> <b>" with exact fractions.
  void write_snapshot(std::ostream &out) const;

private:
  void attach(const Box &box);
  void detach(const Box &box);

  const Problem *problem_;
  Domain domain_;
  std::vector<Box> boxes_;
  VertexDatabase db_;
  std::map<int, Group> groups_;
  std::vector<std::vector<BoxId>> anchored_;
};

} // namespace lipgrad
