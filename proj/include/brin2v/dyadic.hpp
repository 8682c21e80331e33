#pragma once

// Exact dyadic intervals and rectangles.  An interval is [num/2^exp,
// (num+1)/2^exp] inside [0,1]; all subdivision is by exact halving, so
// numerators and exponents stay integral.  Depth is capped at 62 halvings,
// far beyond anything the computations here produce.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace brin2v {

struct DyadicInterval {
  std::uint64_t num = 0;
  std::uint32_t exp = 0;

  static constexpr std::uint32_t max_exp = 62;

  DyadicInterval() = default;
  DyadicInterval(std::uint64_t n, std::uint32_t e) : num(n), exp(e) {
    if (e > max_exp) throw std::overflow_error("dyadic subdivision too deep");
    if (n >> e) throw std::invalid_argument("dyadic interval outside the unit interval");
  }

  bool is_unit() const { return exp == 0; }

  DyadicInterval lower_half() const { return DyadicInterval(2 * num, exp + 1); }
  DyadicInterval upper_half() const { return DyadicInterval(2 * num + 1, exp + 1); }

  // endpoints as fractions with a common denominator 2^e, e >= exp
  std::uint64_t lo_scaled(std::uint32_t e) const { return num << (e - exp); }
  std::uint64_t hi_scaled(std::uint32_t e) const { return (num + 1) << (e - exp); }

  bool contains(const DyadicInterval& o) const {
    std::uint32_t e = exp > o.exp ? exp : o.exp;
    return lo_scaled(e) <= o.lo_scaled(e) && o.hi_scaled(e) <= hi_scaled(e);
  }

  // true when the interiors meet
  bool overlaps(const DyadicInterval& o) const {
    std::uint32_t e = exp > o.exp ? exp : o.exp;
    return lo_scaled(e) < o.hi_scaled(e) && o.lo_scaled(e) < hi_scaled(e);
  }

  // strictly inside one half of o (never straddles a midpoint of o's halves
  // because all intervals come from halving)
  bool in_lower_half_of(const DyadicInterval& o) const {
    return o.lower_half().contains(*this);
  }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  friend std::strong_ordering operator<=>(const DyadicInterval& a, const DyadicInterval& b) {
    std::uint32_t e = a.exp > b.exp ? a.exp : b.exp;
    if (auto c = a.lo_scaled(e) <=> b.lo_scaled(e); c != 0) return c;
    return b.hi_scaled(e) <=> a.hi_scaled(e);  // wider first among equal left ends
  }
};

struct DyadicRect {
  DyadicInterval x, y;

  DyadicRect() = default;
  DyadicRect(DyadicInterval xi, DyadicInterval yi) : x(xi), y(yi) {}

  static DyadicRect unit() { return DyadicRect(); }

  bool is_unit() const { return x.is_unit() && y.is_unit(); }

  DyadicRect left_half() const { return {x.lower_half(), y}; }
  DyadicRect right_half() const { return {x.upper_half(), y}; }
  DyadicRect bottom_half() const { return {x, y.lower_half()}; }
  DyadicRect top_half() const { return {x, y.upper_half()}; }

  bool contains(const DyadicRect& o) const { return x.contains(o.x) && y.contains(o.y); }
  bool overlaps(const DyadicRect& o) const { return x.overlaps(o.x) && y.overlaps(o.y); }

  friend bool operator==(const DyadicRect&, const DyadicRect&) = default;
  friend std::strong_ordering operator<=>(const DyadicRect& a, const DyadicRect& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

inline std::string to_string(const DyadicInterval& iv) {
  return "[" + std::to_string(iv.num) + "/2^" + std::to_string(iv.exp) + "]";
}

inline std::string to_string(const DyadicRect& r) {
  return to_string(r.x) + "x" + to_string(r.y);
}

}  // namespace brin2v
