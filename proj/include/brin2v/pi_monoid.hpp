#pragma once

// Arithmetic in the monoid of numbered patterns: multiplication, left
// divisibility, common left multiples and the least-common-left-multiple
// search.  Left divisibility is decided exactly: the monoid embeds in its
// group of right fractions, so it is cancellative on both sides, and each
// generator action on patterns is injective with a decidable image.  Peeling
// the divisor's canonical word off the candidate multiple letter by letter
// either recovers the unique cofactor or proves there is none.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "brin2v/forest.hpp"
#include "brin2v/pattern.hpp"
#include "brin2v/words.hpp"

namespace brin2v {

struct PiElement {
  NumberedPattern pattern;

  PiElement() = default;
  explicit PiElement(NumberedPattern p) : pattern(std::move(p)) {}
  explicit PiElement(const Word& w) : pattern(pattern_of_word(w)) {}

  static PiElement identity() { return PiElement(); }

  friend bool operator==(const PiElement&, const PiElement&) = default;
  friend auto operator<=>(const PiElement& a, const PiElement& b) {
    return a.pattern <=> b.pattern;
  }
};

inline PiElement pi_element(const char* word_text) {
  return PiElement(parse_word(word_text, Alphabet::pi));
}

inline PiElement multiply(const PiElement& p, const PiElement& q) {
  return PiElement(apply_word(p.pattern, canonical_word_pi(q.pattern)));
}

// The C with C * K = L, when K left-divides L.  `surplus_bound` caps the size
// of the cofactor that will be searched for.
inline std::optional<PiElement> left_divides(const PiElement& k, const PiElement& l,
                                             std::uint64_t surplus_bound = 8) {
  std::uint64_t sk = k.pattern.surplus(), sl = l.pattern.surplus();
  if (sk > sl) return std::nullopt;
  if (sl - sk > surplus_bound)
    throw std::invalid_argument("search bound exceeded: cofactor surplus " +
                                std::to_string(sl - sk) + " > " + std::to_string(surplus_bound));
  Word w = canonical_word_pi(k.pattern);
  NumberedPattern cur = l.pattern;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    auto undone = unapply_generator(std::move(cur), *it);
    if (!undone) return std::nullopt;
    cur = std::move(*undone);
  }
  PiElement c(std::move(cur));
  if (multiply(c, k) != l) return std::nullopt;
  return c;
}

// Enumeration window for the bounded common-left-multiple search: cofactors A
// are generated from every labeled tiling of squares 0..max_square with at
// most `surplus` halvings, numbered by every permutation of 0..N-1 where N is
// the resulting rectangle count.  Cofactors whose numbering reaches outside
// that range are out of scope; reports carry the window so the claim stays
// honest.
struct ClmWindow {
  std::uint64_t max_square = 2;
  std::uint64_t surplus = 3;
};

namespace detail {

inline void enumerate_tilings(const DyadicRect& rect, std::uint64_t carets,
                              std::vector<std::vector<DyadicRect>>& out) {
  if (carets == 0) {
    out.push_back({rect});
    return;
  }
  for (std::uint64_t left = 0; left < carets; ++left) {
    std::uint64_t right = carets - 1 - left;
    for (int dir = 0; dir < 2; ++dir) {
      DyadicRect a = dir == 0 ? rect.left_half() : rect.bottom_half();
      DyadicRect b = dir == 0 ? rect.right_half() : rect.top_half();
      std::vector<std::vector<DyadicRect>> la, lb;
      enumerate_tilings(a, left, la);
      enumerate_tilings(b, right, lb);
      for (const auto& ta : la)
        for (const auto& tb : lb) {
          std::vector<DyadicRect> t = ta;
          t.insert(t.end(), tb.begin(), tb.end());
          out.push_back(std::move(t));
        }
    }
  }
}

template <typename Fn>
inline void enumerate_elements(const ClmWindow& win, Fn&& fn) {
  std::uint64_t nsq = win.max_square + 1;
  // per-square tilings by caret count
  std::vector<std::vector<std::vector<DyadicRect>>> tilings(win.surplus + 1);
  for (std::uint64_t c = 0; c <= win.surplus; ++c)
    enumerate_tilings(DyadicRect::unit(), c, tilings[c]);

  // distribute the surplus over the squares
  std::vector<std::uint64_t> split(nsq, 0);
  auto rec = [&](auto&& self, std::uint64_t sq, std::uint64_t used) -> void {
    if (sq == nsq) {
      // choose one tiling per square, then every numbering
      std::vector<std::size_t> choice(nsq, 0);
      auto pick = [&](auto&& pickself, std::uint64_t at) -> void {
        if (at == nsq) {
          std::vector<DyadicRect> flat;
          std::vector<std::uint64_t> flat_sq;
          for (std::uint64_t q = 0; q < nsq; ++q)
            for (const auto& r : tilings[split[q]][choice[q]]) {
              flat.push_back(r);
              flat_sq.push_back(q);
            }
          std::vector<std::uint64_t> perm(flat.size());
          for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
          do {
            NumberedPattern p;
            p.set_tail_offset(used);
            for (std::uint64_t q = 0; q < nsq; ++q) {
              std::vector<NumberedRect> tiles;
              for (std::size_t i = 0; i < flat.size(); ++i)
                if (flat_sq[i] == q) tiles.push_back({flat[i], perm[i]});
              p.set_square(q, std::move(tiles));
            }
            p.canonicalize();
            fn(PiElement(std::move(p)));
          } while (std::next_permutation(perm.begin(), perm.end()));
        } else {
          for (std::size_t c = 0; c < tilings[split[at]].size(); ++c) {
            choice[at] = c;
            pickself(pickself, at + 1);
          }
        }
      };
      pick(pick, 0);
      return;
    }
    for (std::uint64_t c = 0; used + c <= win.surplus; ++c) {
      split[sq] = c;
      self(self, sq + 1, used + c);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace detail

// All common left multiples L = A*Y = B*Z with surplus(L) <= surplus_bound
// whose cofactor A lies inside the window; deduplicated, sorted by canonical
// word.
inline std::vector<PiElement> common_left_multiples(const PiElement& y, const PiElement& z,
                                                    std::uint64_t surplus_bound,
                                                    std::optional<ClmWindow> window = {}) {
  ClmWindow win;
  if (window) {
    win = *window;
  } else {
    std::uint64_t msq = 0;
    for (const auto* e : {&y, &z})
      if (!e->pattern.squares().empty())
        msq = std::max(msq, e->pattern.squares().rbegin()->first);
    win.max_square = msq + 1;
    win.surplus = surplus_bound > y.pattern.surplus() ? surplus_bound - y.pattern.surplus() : 0;
  }
  std::set<NumberedPattern> seen;
  std::vector<PiElement> out;
  detail::enumerate_elements(win, [&](const PiElement& a) {
    PiElement l = multiply(a, y);
    if (l.pattern.surplus() > surplus_bound) return;
    if (!seen.insert(l.pattern).second) return;
    if (!left_divides(z, l, surplus_bound).has_value()) return;
    out.push_back(l);
  });
  std::sort(out.begin(), out.end(), [](const PiElement& a, const PiElement& b) {
    return canonical_word_pi(a.pattern).letters < canonical_word_pi(b.pattern).letters;
  });
  return out;
}

// The member that left-divides every other member, if one exists.
inline std::optional<PiElement> has_least(const std::vector<PiElement>& candidates,
                                          std::uint64_t surplus_bound = 8) {
  for (const auto& c : candidates) {
    bool least = true;
    for (const auto& d : candidates) {
      if (!left_divides(c, d, surplus_bound).has_value()) {
        least = false;
        break;
      }
    }
    if (least) return c;
  }
  return std::nullopt;
}

}  // namespace brin2v
