#include "lipgrad/grid.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace lipgrad {

GridFraction::GridFraction(std::uint64_t numerator, unsigned depth) {
  if (depth > kMaxGridDepth)
    throw std::overflow_error("grid depth exceeds 3^40 resolution");
  if (numerator > pow3(depth))
    throw std::invalid_argument("grid fraction outside [0,1]");
  while (depth > 0 && numerator % 3 == 0) {
    numerator /= 3;
    --depth;
  }
  if (numerator == 0) depth = 0;
  num_ = numerator;
  depth_ = depth;
}

double GridFraction::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(pow3(depth_));
}

std::uint64_t GridFraction::numerator_at(unsigned depth) const {
  if (depth < depth_)
    throw std::invalid_argument("cannot rescale grid fraction to coarser depth");
  return num_ * pow3(depth - depth_);
}

std::strong_ordering operator<=>(const GridFraction &lhs,
                                 const GridFraction &rhs) {
  const unsigned d = std::max(lhs.depth_, rhs.depth_);
  return lhs.numerator_at(d) <=> rhs.numerator_at(d);
}

std::string GridFraction::to_string() const {
  if (depth_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(pow3(depth_));
}

GridFraction GridFraction::parse(const std::string &text) {
  auto parse_u64 = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("bad grid fraction: " + text);
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return GridFraction(parse_u64(text), 0);
  const std::uint64_t num = parse_u64(std::string_view(text).substr(0, slash));
  std::uint64_t den = parse_u64(std::string_view(text).substr(slash + 1));
  unsigned depth = 0;
  while (den > 1) {
    if (den % 3 != 0)
      throw std::invalid_argument("grid denominator is not a power of 3: " + text);
    den /= 3;
    ++depth;
  }
  return GridFraction(num, depth);
}

GridFraction abs_diff(const GridFraction &x, const GridFraction &y) {
  const unsigned d = std::max(x.depth(), y.depth());
  const std::uint64_t nx = x.numerator_at(d), ny = y.numerator_at(d);
  return GridFraction(nx > ny ? nx - ny : ny - nx, d);
}

GridFraction two_thirds_toward(const GridFraction &from,
                               const GridFraction &to) {
  // (from + 2 to) / 3 at one level finer than both endpoints.
  const unsigned d = std::max(from.depth(), to.depth());
  if (d + 1 > kMaxGridDepth)
    throw std::overflow_error("grid depth exceeds 3^40 resolution");
  return GridFraction(from.numerator_at(d) + 2 * to.numerator_at(d), d + 1);
}

std::string GridVertex::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j) out += ',';
    out += coords[j].to_string();
  }
  return out;
}

GridVertex GridVertex::parse(const std::string &text) {
  GridVertex v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.coords.push_back(GridFraction::parse(item));
  return v;
}

std::size_t GridVertexHash::operator()(const GridVertex &v) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto &c : v.coords) {
    std::uint64_t k = c.numerator() * 64 + c.depth();
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    h = (h ^ k) * 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

void TernaryVolumeSum::add(const ExactVolume &v) {
  if (counts_.size() <= v.exponent) counts_.resize(v.exponent + 1, 0);
  counts_[v.exponent] += v.numerator;
}

bool TernaryVolumeSum::is_unit() const {
  if (counts_.empty()) return false;
  std::uint64_t carry = 0;
  for (std::size_t e = counts_.size() - 1; e > 0; --e) {
    const std::uint64_t c = counts_[e] + carry;
    if (c % 3 != 0) return false;
    carry = c / 3;
  }
  return counts_[0] + carry == 1;
}

} // namespace lipgrad
