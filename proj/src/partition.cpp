#include "lipgrad/partition.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace lipgrad {

const VertexRecord *VertexDatabase::find(const GridVertex &v) const {
  const auto it = index_.find(v);
  return it == index_.end() ? nullptr : &records_[it->second];
}

const VertexRecord &VertexDatabase::insert(VertexRecord rec) {
  if (index_.contains(rec.vertex)) throw std::logic_error("vertex already stored");
  rec.trial_index = records_.size() + 1;
  index_.emplace(rec.vertex, records_.size());
  records_.push_back(std::move(rec));
  return records_.back();
}

Partition::Partition(const Problem &problem)
    : problem_(&problem), domain_(problem.lower, problem.upper) {
  problem.validate();
  const std::size_t n = problem.dim();
  Box root;
  root.id = 0;
  root.a = GridVertex::filled(n, GridFraction::zero());
  root.b = GridVertex::filled(n, GridFraction::one());
  root.s = 0;
  const VertexRecord &rec = get_or_eval(root.a);
  root.anchor = rec.trial_index;
  root.ch = characterize(domain_, root.a, root.b, rec);
  boxes_.push_back(root);
  attach(boxes_.back());
}

const VertexRecord &Partition::get_or_eval(const GridVertex &v) {
  if (const VertexRecord *hit = db_.find(v)) return *hit;
  VertexRecord rec;
  rec.vertex = v;
  rec.x = domain_.to_real(v);
  rec.f = problem_->value(rec.x);
  rec.grad = problem_->gradient(rec.x);
  const VertexRecord &stored = db_.insert(std::move(rec));
  anchored_.emplace_back();
  return stored;
}

bool Partition::splittable(BoxId id) const {
  const Box &bx = boxes_.at(id);
  const std::size_t i = longest_side(domain_, bx);
  return std::max(bx.a[i].depth(), bx.b[i].depth()) < kMaxGridDepth;
}

TrisectResult Partition::trisect(BoxId id) {
  const Box parent = boxes_.at(id);
  const std::size_t i = longest_side(domain_, parent);

  GridVertex u = parent.a;
  u[i] = two_thirds_toward(parent.a[i], parent.b[i]);
  GridVertex v = parent.b;
  v[i] = two_thirds_toward(parent.b[i], parent.a[i]);
  if (u[i] == v[i] || u[i] == parent.b[i] || v[i] == parent.a[i])
    throw std::logic_error("trisection produced a degenerate box");

  // Evaluate before touching the partition so a failing objective leaves it intact.
  const std::size_t known = db_.size();
  const VertexRecord &rec_u = get_or_eval(u);
  const VertexRecord *new_trial = db_.size() > known ? &rec_u : nullptr;
  const VertexRecord &rec_a = db_.at(parent.anchor);

  detach(parent);

  Box middle;
  middle.id = id;
  middle.a = u;
  middle.b = v;
  middle.s = parent.s + 1;
  middle.anchor = rec_u.trial_index;
  middle.ch = characterize(domain_, middle.a, middle.b, rec_u);

  Box low;
  low.id = boxes_.size();
  low.a = parent.a;
  low.b = v;
  low.s = parent.s + 1;
  low.anchor = parent.anchor;
  low.ch = characterize(domain_, low.a, low.b, rec_a);

  Box high;
  high.id = boxes_.size() + 1;
  high.a = u;
  high.b = parent.b;
  high.s = parent.s + 1;
  high.anchor = rec_u.trial_index;
  high.ch = characterize(domain_, high.a, high.b, rec_u);

  boxes_[id] = std::move(middle);
  boxes_.push_back(std::move(low));
  boxes_.push_back(std::move(high));
  attach(boxes_[id]);
  attach(boxes_[boxes_.size() - 2]);
  attach(boxes_[boxes_.size() - 1]);

  return TrisectResult{id, boxes_.size() - 2, boxes_.size() - 1, new_trial};
}

void Partition::attach(const Box &box) {
  groups_[box.s].insert(GroupEntry{box.ch.F, box.id});
  anchored_.at(box.anchor - 1).push_back(box.id);
}

void Partition::detach(const Box &box) {
  auto g = groups_.find(box.s);
  g->second.erase(GroupEntry{box.ch.F, box.id});
  if (g->second.empty()) groups_.erase(g);
  auto &list = anchored_.at(box.anchor - 1);
  list.erase(std::find(list.begin(), list.end(), box.id));
}

double Partition::max_diagonal_sq() const {
  // Boxes of the largest group share their diagonal.
  const BoxId id = groups_.begin()->second.begin()->id;
  return 2.0 * boxes_[id].ch.d;
}

void Partition::write_snapshot(std::ostream &out) const {
  for (const Box &bx : boxes_)
    out << "box " << bx.id << ' ' << bx.s << ' ' << bx.a.to_string() << ' '
        << bx.b.to_string() << '\n';
}

} // namespace lipgrad
