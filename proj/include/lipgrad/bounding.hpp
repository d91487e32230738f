#pragma once

#include <span>

#include "lipgrad/box.hpp"

namespace lipgrad {

// Gradient-based lower bounds over a box whose trial point is its vertex a.
//
// With f' Lipschitz (constant K) the quadratic
//   Q(x, K') = f(a) + <f'(a), x - a> - K'/2 ||x - a||^2
// underestimates f on the box for every K' >= K. The linear part is minimized
// at a vertex z of the box, so
//   R(K') = f(a) + <f'(a), z - a> - K'/2 ||b - a||^2 = F - K' d
// bounds f from below. F and d do not depend on K', which lets every box be
// placed as a dot (d, F) and compared for all estimates at once.

/// Vertex minimizing the linearization at a. Zero partials keep a(j).
GridVertex linearization_vertex(const GridVertex &a, const GridVertex &b,
                                std::span<const double> grad);

/// F = f(a) + <f'(a), z - a>; rec must be the record stored at a.
double F_value(const Domain &domain, const GridVertex &a, const GridVertex &b,
               const VertexRecord &rec);

/// (z, F, d) for the box [a, b] anchored at rec.
Characteristic characterize(const Domain &domain, const GridVertex &a,
                            const GridVertex &b, const VertexRecord &rec);

/// R = F - Khat * d. Throws std::invalid_argument unless Khat > 0.
double characteristic_R(const Characteristic &ch, double Khat);
double characteristic_R(const Domain &domain, const Box &box,
                        const VertexRecord &rec, double Khat);

/// Q(x, Khat). Throws std::out_of_range when x is outside the box.
double eval_minorant(const Domain &domain, const Box &box, const VertexRecord &rec,
                     double Khat, std::span<const double> x);

} // namespace lipgrad
