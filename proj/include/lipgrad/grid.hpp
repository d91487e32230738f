#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lipgrad {

// Largest power of three that fits in 64 bits is 3^40.
inline constexpr unsigned kMaxGridDepth = 40;

constexpr std::uint64_t pow3(unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 3;
  return r;
}

/// Exact coordinate numerator / 3^depth in [0, 1], kept in lowest terms
/// (depth == 0 or numerator not divisible by 3).
class GridFraction {
public:
  constexpr GridFraction() = default;
  GridFraction(std::uint64_t numerator, unsigned depth);

  static GridFraction zero() { return {}; }
  static GridFraction one() { return GridFraction(1, 0); }

  std::uint64_t numerator() const { return num_; }
  unsigned depth() const { return depth_; }
  double to_double() const;

  /// Numerator rescaled to a finer depth (depth() <= depth).
  std::uint64_t numerator_at(unsigned depth) const;

  std::string to_string() const; // "0", "1", "2/3", "4/9"
  static GridFraction parse(const std::string &text);

  friend bool operator==(const GridFraction &, const GridFraction &) = default;
  friend std::strong_ordering operator<=>(const GridFraction &lhs,
                                          const GridFraction &rhs);

private:
  std::uint64_t num_ = 0;
  unsigned depth_ = 0;
};

/// |x - y| as an exact grid fraction.
GridFraction abs_diff(const GridFraction &x, const GridFraction &y);

/// from + 2/3 (to - from). Throws std::overflow_error past kMaxGridDepth.
GridFraction two_thirds_toward(const GridFraction &from,
                               const GridFraction &to);

/// Trial point in grid coordinates relative to the search domain.
struct GridVertex {
  std::vector<GridFraction> coords;

  std::size_t dim() const { return coords.size(); }
  const GridFraction &operator[](std::size_t j) const { return coords[j]; }
  GridFraction &operator[](std::size_t j) { return coords[j]; }

  friend bool operator==(const GridVertex &, const GridVertex &) = default;

  static GridVertex filled(std::size_t n, const GridFraction &value) {
    return GridVertex{std::vector<GridFraction>(n, value)};
  }
  std::string to_string() const; // comma separated fractions
  static GridVertex parse(const std::string &text);
};

struct GridVertexHash {
  std::size_t operator()(const GridVertex &v) const noexcept;
};

/// Exact volume relative to the domain: numerator / 3^exponent.
struct ExactVolume {
  std::uint64_t numerator = 1;
  unsigned exponent = 0;
  friend bool operator==(const ExactVolume &, const ExactVolume &) = default;
};

/// Exact sum of terms 1/3^e. Used to check that a partition covers the
/// domain without losing or duplicating volume.
class TernaryVolumeSum {
public:
  void add(const ExactVolume &v);
  /// True when the accumulated sum is exactly 1.
  bool is_unit() const;

private:
  std::vector<std::uint64_t> counts_; // counts_[e] terms of 1/3^e
};

} // namespace lipgrad
