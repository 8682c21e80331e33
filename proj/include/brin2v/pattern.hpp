#pragma once

// Numbered patterns in the disjoint union X of unit squares S_0, S_1, ...
//
// A pattern tiles each square by dyadic rectangles obtained from repeated
// halving; only finitely many squares hold more than one rectangle.  A
// numbered pattern carries a bijection from N to its rectangles that is
// eventually the shifted identity: there are k and j with every square
// i > k a single rectangle numbered i + j.
//
// Storage is canonical: a square is stored explicitly exactly when it
// violates the tail rule (it is subdivided, or its single full rectangle
// carries a number other than index + tail_offset).  Structural equality of
// this representation decides equality in the monoid.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "brin2v/dyadic.hpp"
#include "brin2v/words.hpp"

namespace brin2v {

struct NumberedRect {
  DyadicRect rect;
  std::uint64_t num = 0;

  friend bool operator==(const NumberedRect&, const NumberedRect&) = default;
  friend std::strong_ordering operator<=>(const NumberedRect& a, const NumberedRect& b) {
    if (auto c = a.rect <=> b.rect; c != 0) return c;
    return a.num <=> b.num;
  }
};

class NumberedPattern {
 public:
  using SquareTiles = std::vector<NumberedRect>;  // kept sorted by rect position

  NumberedPattern() = default;

  static NumberedPattern trivial() { return NumberedPattern(); }

  const std::map<std::uint64_t, SquareTiles>& squares() const { return squares_; }
  std::uint64_t tail_offset() const { return tail_offset_; }

  // smallest k such that every square i > k conforms to the tail rule
  std::uint64_t tail_start() const {
    return squares_.empty() ? 0 : squares_.rbegin()->first;
  }

  bool is_trivial() const { return squares_.empty() && tail_offset_ == 0; }

  // number of halvings needed to build the pattern
  std::uint64_t surplus() const {
    std::uint64_t s = 0;
    for (const auto& [sq, tiles] : squares_) s += tiles.size() - 1;
    return s;
  }

  // number carried by the single rectangle of square `sq` when unstored
  std::uint64_t tail_number(std::uint64_t sq) const { return sq + tail_offset_; }

  bool square_explicit(std::uint64_t sq) const { return squares_.count(sq) != 0; }

  // tiles of a square, materializing the tail rule on demand
  SquareTiles square_tiles(std::uint64_t sq) const {
    auto it = squares_.find(sq);
    if (it != squares_.end()) return it->second;
    return {NumberedRect{DyadicRect::unit(), tail_number(sq)}};
  }

  // (square, rect) holding a given number
  std::pair<std::uint64_t, DyadicRect> locate(std::uint64_t n) const {
    for (const auto& [sq, tiles] : squares_)
      for (const auto& t : tiles)
        if (t.num == n) return {sq, t.rect};
    if (n < tail_offset_ || square_explicit(n - tail_offset_))
      throw std::logic_error("number " + std::to_string(n) + " not present in pattern");
    return {n - tail_offset_, DyadicRect::unit()};
  }

  friend bool operator==(const NumberedPattern&, const NumberedPattern&) = default;
  friend std::strong_ordering operator<=>(const NumberedPattern& a, const NumberedPattern& b) {
    if (auto c = a.tail_offset_ <=> b.tail_offset_; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.squares_.begin(), a.squares_.end(), b.squares_.begin(), b.squares_.end(),
        [](const auto& x, const auto& y) -> std::strong_ordering {
          if (auto c = x.first <=> y.first; c != 0) return c;
          return std::lexicographical_compare_three_way(x.second.begin(), x.second.end(),
                                                        y.second.begin(), y.second.end());
        });
  }

  // --- mutators used by the generator actions ---------------------------

  void set_square(std::uint64_t sq, SquareTiles tiles) {
    std::sort(tiles.begin(), tiles.end());
    squares_[sq] = std::move(tiles);
  }

  void set_tail_offset(std::uint64_t j) { tail_offset_ = j; }

  void materialize(std::uint64_t sq) {
    if (!square_explicit(sq))
      squares_[sq] = {NumberedRect{DyadicRect::unit(), tail_number(sq)}};
  }

  // drop stored squares that conform to the tail rule again
  void canonicalize() {
    for (auto it = squares_.begin(); it != squares_.end();) {
      const auto& tiles = it->second;
      if (tiles.size() == 1 && tiles[0].rect.is_unit() && tiles[0].num == tail_number(it->first))
        it = squares_.erase(it);
      else
        ++it;
    }
  }

  void shift_numbers_above(std::uint64_t n, std::int64_t delta) {
    for (auto& [sq, tiles] : squares_)
      for (auto& t : tiles)
        if (t.num > n) t.num = static_cast<std::uint64_t>(static_cast<std::int64_t>(t.num) + delta);
  }

  // exchange the numbers n and n+1 (both holders already explicit)
  void swap_pair(std::uint64_t n) {
    std::uint64_t count = 0;
    for (auto& [sq, tiles] : squares_) {
      (void)sq;
      for (auto& t : tiles) {
        if (t.num == n) {
          t.num = n + 1;
          ++count;
        } else if (t.num == n + 1) {
          t.num = n;
          ++count;
        }
      }
    }
    if (count != 2) throw std::logic_error("swap failed to find both rectangles");
  }

  // sanity check for externally supplied data (JSON input)
  void validate() const {
    std::map<std::uint64_t, std::uint64_t> holders;  // number -> square
    for (const auto& [sq, tiles] : squares_) {
      if (tiles.empty()) throw std::invalid_argument("empty square tiling");
      for (const auto& t : tiles) {
        if (!holders.emplace(t.num, sq).second)
          throw std::invalid_argument("duplicate rectangle number " + std::to_string(t.num));
      }
      for (std::size_t a = 0; a < tiles.size(); ++a)
        for (std::size_t b = a + 1; b < tiles.size(); ++b)
          if (tiles[a].rect.overlaps(tiles[b].rect))
            throw std::invalid_argument("overlapping rectangles in square " + std::to_string(sq));
    }
    for (const auto& [n, sq] : holders) {
      if (n >= tail_offset_) {
        std::uint64_t q = n - tail_offset_;
        if (!square_explicit(q))
          throw std::invalid_argument("number " + std::to_string(n) + " clashes with the tail rule");
      }
    }
    for (std::uint64_t m = 0; m < tail_offset_; ++m)
      if (!holders.count(m))
        throw std::invalid_argument("number " + std::to_string(m) + " missing");
    for (const auto& [sq, tiles] : squares_)
      if (!holders.count(sq + tail_offset_))
        throw std::invalid_argument("number " + std::to_string(sq + tail_offset_) + " missing");
  }

 private:
  std::map<std::uint64_t, SquareTiles> squares_;
  std::uint64_t tail_offset_ = 0;
};

inline NumberedPattern trivial_pattern() { return NumberedPattern::trivial(); }

namespace detail {

// Splitting the rectangle numbered n bumps the tail offset, which would
// corrupt the numbers of unstored squares below the split; store them first.
inline void materialize_below(NumberedPattern& p, std::uint64_t n) {
  if (n < p.tail_offset()) return;
  std::uint64_t limit = n - p.tail_offset();  // squares q with q + j < n
  for (std::uint64_t q = 0; q < limit; ++q) p.materialize(q);
}

inline void split_rect(NumberedPattern& p, std::uint64_t n, bool vertical) {
  auto [sq, rect] = p.locate(n);
  p.materialize(sq);
  detail::materialize_below(p, n);
  p.set_tail_offset(p.tail_offset() + 1);
  p.shift_numbers_above(n, +1);
  auto tiles = p.square_tiles(sq);
  auto it = std::find_if(tiles.begin(), tiles.end(),
                         [&](const NumberedRect& t) { return t.rect == rect; });
  tiles.erase(it);
  if (vertical) {
    tiles.push_back({rect.left_half(), n});
    tiles.push_back({rect.right_half(), n + 1});
  } else {
    tiles.push_back({rect.bottom_half(), n});
    tiles.push_back({rect.top_half(), n + 1});
  }
  p.set_square(sq, std::move(tiles));
  p.canonicalize();
}

inline void swap_numbers(NumberedPattern& p, std::uint64_t n) {
  for (std::uint64_t m : {n, n + 1}) {
    auto [sq, rect] = p.locate(m);
    p.materialize(sq);
    (void)rect;
  }
  p.swap_pair(n);
  p.canonicalize();
}

}  // namespace detail

// right action of a positive generator on a pattern
inline NumberedPattern apply_generator(NumberedPattern p, const Generator& g) {
  if (alphabet_of(g.kind) != Alphabet::pi || g.sign < 0)
    throw std::invalid_argument("apply_generator expects a positive pi-alphabet generator");
  switch (g.kind) {
    case Kind::v: detail::split_rect(p, g.index, /*vertical=*/true); break;
    case Kind::h: detail::split_rect(p, g.index, /*vertical=*/false); break;
    case Kind::sigma: detail::swap_numbers(p, g.index); break;
    default: break;
  }
  return p;
}

inline NumberedPattern apply_word(NumberedPattern p, const Word& w) {
  for (const auto& g : w.letters) p = apply_generator(std::move(p), g);
  return p;
}

inline NumberedPattern pattern_of_word(const Word& w) {
  if (w.alphabet != Alphabet::pi || !w.monoid_positive())
    throw std::invalid_argument("pattern_of_word expects a positive pi-alphabet word");
  return apply_word(trivial_pattern(), w);
}

inline bool patterns_equal(const NumberedPattern& a, const NumberedPattern& b) { return a == b; }

// Exact inverse of apply_generator.  Returns nullopt when the pattern is not
// in the image of the corresponding right multiplication; this decides right
// divisibility one letter at a time.
inline std::optional<NumberedPattern> unapply_generator(NumberedPattern p, const Generator& g) {
  if (g.kind == Kind::sigma) {
    detail::swap_numbers(p, g.index);
    return p;
  }
  std::uint64_t n = g.index;
  if (p.tail_offset() == 0) return std::nullopt;
  std::pair<std::uint64_t, DyadicRect> lo, hi;
  try {
    lo = p.locate(n);
    hi = p.locate(n + 1);
  } catch (const std::logic_error&) {
    return std::nullopt;
  }
  if (lo.first != hi.first) return std::nullopt;
  bool vertical = g.kind == Kind::v;
  DyadicRect parent;
  if (vertical) {
    if (lo.second.y != hi.second.y || lo.second.x.exp != hi.second.x.exp ||
        lo.second.x.exp == 0 || lo.second.x.num % 2 != 0 ||
        hi.second.x.num != lo.second.x.num + 1)
      return std::nullopt;
    parent = DyadicRect(DyadicInterval(lo.second.x.num / 2, lo.second.x.exp - 1), lo.second.y);
  } else {
    if (lo.second.x != hi.second.x || lo.second.y.exp != hi.second.y.exp ||
        lo.second.y.exp == 0 || lo.second.y.num % 2 != 0 ||
        hi.second.y.num != lo.second.y.num + 1)
      return std::nullopt;
    parent = DyadicRect(lo.second.x, DyadicInterval(lo.second.y.num / 2, lo.second.y.exp - 1));
  }
  p.materialize(lo.first);
  detail::materialize_below(p, n);  // their numbers survive the offset decrement
  auto tiles = p.square_tiles(lo.first);
  std::erase_if(tiles, [&](const NumberedRect& t) { return t.num == n || t.num == n + 1; });
  tiles.push_back({parent, n});
  p.set_square(lo.first, std::move(tiles));
  p.shift_numbers_above(n + 1, -1);
  p.set_tail_offset(p.tail_offset() - 1);
  p.canonicalize();
  return p;
}

// --- superposition ------------------------------------------------------

// Unnumbered tiling, square by square; only nontrivial squares are stored.
using Refinement = std::map<std::uint64_t, std::vector<DyadicRect>>;

inline std::vector<DyadicRect> tiles_of(const NumberedPattern& p, std::uint64_t sq) {
  std::vector<DyadicRect> out;
  for (const auto& t : p.square_tiles(sq)) out.push_back(t.rect);
  std::sort(out.begin(), out.end());
  return out;
}

// Coarsest common refinement.  Overlapping dyadic intervals are nested, so
// every intersection of a tile of P with a tile of Q is itself dyadic.
inline Refinement superpose(const NumberedPattern& p, const NumberedPattern& q) {
  Refinement out;
  std::vector<std::uint64_t> sqs;
  for (const auto& [sq, tiles] : p.squares()) sqs.push_back(sq);
  for (const auto& [sq, tiles] : q.squares()) sqs.push_back(sq);
  std::sort(sqs.begin(), sqs.end());
  sqs.erase(std::unique(sqs.begin(), sqs.end()), sqs.end());
  for (std::uint64_t sq : sqs) {
    auto tp = tiles_of(p, sq);
    auto tq = tiles_of(q, sq);
    std::vector<DyadicRect> merged;
    for (const auto& a : tp)
      for (const auto& b : tq)
        if (a.overlaps(b))
          merged.push_back(DyadicRect(a.x.exp >= b.x.exp ? a.x : b.x,
                                      a.y.exp >= b.y.exp ? a.y : b.y));
    std::sort(merged.begin(), merged.end());
    if (merged.size() > 1) out[sq] = std::move(merged);
  }
  return out;
}

inline Refinement tiling_of(const NumberedPattern& p) {
  Refinement out;
  for (const auto& [sq, tiles] : p.squares()) {
    if (tiles.size() <= 1) continue;
    std::vector<DyadicRect> v;
    for (const auto& t : tiles) v.push_back(t.rect);
    std::sort(v.begin(), v.end());
    out[sq] = std::move(v);
  }
  return out;
}

// --- the canonical sigma word for a finitary renumbering ------------------

// Word u with: applying u's swaps to rectangles carrying `old` numbers
// produces the `new` numbers, where perm maps old -> new.  Deterministic
// bubble decomposition, smallest index first.
inline std::vector<std::uint32_t> sigma_sort_indices(const std::map<std::uint64_t, std::uint64_t>& perm) {
  std::uint64_t w = 0;
  for (const auto& [a, b] : perm) {
    if (a > w) w = a;
    if (b > w) w = b;
  }
  std::vector<std::uint64_t> inv(w + 1);
  for (std::uint64_t i = 0; i <= w; ++i) inv[i] = i;
  for (const auto& [a, b] : perm) inv[b] = a;  // inv = perm^-1 in one-line form
  std::vector<std::uint32_t> rev;
  bool dirty = true;
  while (dirty) {
    dirty = false;
    for (std::uint64_t a = 0; a < w; ++a) {
      if (inv[a] > inv[a + 1]) {
        std::swap(inv[a], inv[a + 1]);
        rev.push_back(static_cast<std::uint32_t>(a));
        dirty = true;
      }
    }
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

inline Word sigma_word(const std::map<std::uint64_t, std::uint64_t>& perm) {
  Word w(Alphabet::pi);
  for (auto i : sigma_sort_indices(perm)) w.letters.push_back(gs(i));
  return w;
}

// --- factorization --------------------------------------------------------

namespace detail {

// Emit the subdivision of one rectangle as letters in preorder: vertical
// before horizontal on fully divided rectangles, subscript = the rectangle's
// number at emission time plus the leaves already final to its left inside
// the block.  slot_base tracks where the block lands once every smaller
// number has been processed; slots records (R-number -> final pre-sigma
// number).  Returns the leaf count.
inline std::uint64_t emit_subdivision(const DyadicRect& rect,
                                      const std::vector<const NumberedRect*>& inside,
                                      std::uint64_t letter_base, std::uint64_t slot_base,
                                      std::uint64_t leaves_left, Word& out,
                                      std::vector<std::pair<std::uint64_t, std::uint64_t>>& slots) {
  if (inside.size() == 1) {
    if (inside[0]->rect != rect) throw std::invalid_argument("not a refinement");
    slots.push_back({inside[0]->num, slot_base + leaves_left});
    return 1;
  }
  for (int dir = 0; dir < 2; ++dir) {
    DyadicRect half = dir == 0 ? rect.left_half() : rect.bottom_half();
    DyadicRect other = dir == 0 ? rect.right_half() : rect.top_half();
    std::vector<const NumberedRect*> in_a, in_b;
    bool ok = true;
    for (const auto* t : inside) {
      if (half.contains(t->rect))
        in_a.push_back(t);
      else if (!half.overlaps(t->rect))
        in_b.push_back(t);
      else {
        ok = false;
        break;
      }
    }
    if (!ok || in_a.empty() || in_b.empty()) continue;
    out.letters.push_back(Generator(dir == 0 ? Kind::v : Kind::h,
                                    static_cast<std::uint32_t>(letter_base + leaves_left)));
    std::uint64_t left_leaves =
        emit_subdivision(half, in_a, letter_base, slot_base, leaves_left, out, slots);
    std::uint64_t right_leaves = emit_subdivision(other, in_b, letter_base, slot_base,
                                                  leaves_left + left_leaves, out, slots);
    return left_leaves + right_leaves;
  }
  throw std::invalid_argument("not a refinement");
}

}  // namespace detail

// Positive word m with P . m = R, provided R's tiling refines P's and the
// numbering offsets agree.  The rectangles of P are subdivided in descending
// number order (splits never disturb smaller numbers), then a bubble sigma
// word matches the numbering.
inline Word factor(const NumberedPattern& p, const NumberedPattern& r) {
  // base rectangles holding refinement work, keyed by their number in p
  struct Job {
    std::uint64_t square;
    DyadicRect rect;
    std::vector<const NumberedRect*> inside;
  };
  std::map<std::uint64_t, Job> jobs;
  std::vector<std::uint64_t> sqs;
  for (const auto& [sq, tiles] : p.squares()) sqs.push_back(sq);
  for (const auto& [sq, tiles] : r.squares())
    if (!p.square_explicit(sq)) sqs.push_back(sq);
  std::deque<NumberedPattern::SquareTiles> tail_singles;  // reference-stable storage
  for (std::uint64_t sq : sqs) {
    const NumberedPattern::SquareTiles* rtiles = nullptr;
    if (auto it = r.squares().find(sq); it != r.squares().end()) {
      rtiles = &it->second;
    } else {
      tail_singles.push_back({NumberedRect{DyadicRect::unit(), r.tail_number(sq)}});
      rtiles = &tail_singles.back();
    }
    auto ptiles = p.square_tiles(sq);
    for (const auto& pt : ptiles) {
      Job job{sq, pt.rect, {}};
      for (const auto& rt : *rtiles) {
        if (!rt.rect.overlaps(pt.rect)) continue;
        if (!pt.rect.contains(rt.rect)) throw std::invalid_argument("not a refinement");
        job.inside.push_back(&rt);
      }
      if (job.inside.empty()) throw std::invalid_argument("not a refinement");
      jobs[pt.num] = std::move(job);
    }
  }
  // tail rectangles of squares untouched by either pattern still shift when
  // smaller numbers split; give them single-tile jobs up to the top job
  if (!jobs.empty()) {
    std::uint64_t top = jobs.rbegin()->first;
    for (std::uint64_t n = 0; n < top; ++n) {
      if (jobs.count(n)) continue;
      std::uint64_t sq = n - p.tail_offset();  // below j the number would be stored
      tail_singles.push_back({NumberedRect{DyadicRect::unit(), r.tail_number(sq)}});
      jobs[n] = Job{sq, DyadicRect::unit(), {&tail_singles.back()[0]}};
    }
  }

  Word out(Alphabet::pi);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> slots;  // R-number -> pre-sigma number
  std::uint64_t extra = 0;  // leaves added below the current number, in final terms
  std::map<std::uint64_t, std::uint64_t> base_of;
  for (const auto& [num, job] : jobs) {
    base_of[num] = num + extra;
    extra += job.inside.size() - 1;
  }
  if (p.tail_offset() + extra != r.tail_offset()) throw std::invalid_argument("not a refinement");
  for (auto it = jobs.rbegin(); it != jobs.rend(); ++it)
    detail::emit_subdivision(it->second.rect, it->second.inside, it->first, base_of[it->first],
                             0, out, slots);

  std::map<std::uint64_t, std::uint64_t> perm;
  for (const auto& [rnum, pre] : slots)
    if (rnum != pre) perm[pre] = rnum;
  for (auto i : sigma_sort_indices(perm)) out.letters.push_back(gs(i));
  return out;
}

}  // namespace brin2v
