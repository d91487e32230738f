#include "lipgrad/box.hpp"

#include <stdexcept>

namespace lipgrad {

std::size_t longest_side(const Domain &domain, const GridVertex &a, const GridVertex &b) {
  std::size_t best = 0;
  double best_len = -1.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const double len = abs_diff(a[j], b[j]).to_double() * domain.width(j);
    if (len > best_len) {
      best = j;
      best_len = len;
    }
  }
  return best;
}

ExactVolume volume(const GridVertex &a, const GridVertex &b) {
  // Every side of a partition box is 1/3^k of the domain edge, but arbitrary
  // boxes may carry a numerator; keep the product exact or refuse.
  std::uint64_t num = 1;
  unsigned exponent = 0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const GridFraction side = abs_diff(a[j], b[j]);
    if (side.numerator() == 0) throw std::invalid_argument("degenerate box");
    if (num > UINT64_MAX / side.numerator())
      throw std::overflow_error("box volume numerator overflows");
    num *= side.numerator();
    exponent += side.depth();
  }
  while (exponent > 0 && num % 3 == 0) {
    num /= 3;
    --exponent;
  }
  return ExactVolume{num, exponent};
}

double diagonal_sq(const Domain &domain, const GridVertex &a, const GridVertex &b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const double len = abs_diff(a[j], b[j]).to_double() * domain.width(j);
    sum += len * len;
  }
  return sum;
}

int orientation(const GridVertex &a, const GridVertex &b, std::size_t j) {
  return a[j] < b[j] ? 1 : -1;
}

} // namespace lipgrad
