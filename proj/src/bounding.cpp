#include "lipgrad/bounding.hpp"

#include <algorithm>
#include <stdexcept>

namespace lipgrad {

GridVertex linearization_vertex(const GridVertex &a, const GridVertex &b,
                                std::span<const double> grad) {
  if (grad.size() != a.dim()) throw std::invalid_argument("gradient length mismatch");
  GridVertex z = a;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const bool increasing = a[j] < b[j];
    const bool keep_a = increasing ? grad[j] >= 0.0 : grad[j] < 0.0;
    if (!keep_a) z[j] = b[j];
  }
  return z;
}

double F_value(const Domain &domain, const GridVertex &a, const GridVertex &b,
               const VertexRecord &rec) {
  const GridVertex z = linearization_vertex(a, b, rec.grad);
  double F = rec.f;
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (z[j] != a[j]) F += rec.grad[j] * (domain.coord(j, z[j]) - domain.coord(j, a[j]));
  return F;
}

Characteristic characterize(const Domain &domain, const GridVertex &a,
                            const GridVertex &b, const VertexRecord &rec) {
  Characteristic ch;
  ch.z = linearization_vertex(a, b, rec.grad);
  ch.F = F_value(domain, a, b, rec);
  ch.d = 0.5 * diagonal_sq(domain, a, b);
  return ch;
}

double characteristic_R(const Characteristic &ch, double Khat) {
  if (!(Khat > 0.0)) throw std::invalid_argument("Lipschitz estimate must be positive");
  return ch.F - Khat * ch.d;
}

double characteristic_R(const Domain &domain, const Box &box,
                        const VertexRecord &rec, double Khat) {
  return characteristic_R(characterize(domain, box.a, box.b, rec), Khat);
}

double eval_minorant(const Domain &domain, const Box &box, const VertexRecord &rec,
                     double Khat, std::span<const double> x) {
  if (x.size() != box.a.dim()) throw std::invalid_argument("point dimension mismatch");
  double lin = 0.0, sq = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double aj = domain.coord(j, box.a[j]);
    const double bj = domain.coord(j, box.b[j]);
    if (x[j] < std::min(aj, bj) || x[j] > std::max(aj, bj))
      throw std::out_of_range("point lies outside the box");
    const double dx = x[j] - aj;
    lin += rec.grad[j] * dx;
    sq += dx * dx;
  }
  return rec.f + lin - 0.5 * Khat * sq;
}

} // namespace lipgrad
