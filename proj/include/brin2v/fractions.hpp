#pragma once

// The group of right fractions of the pattern monoid.  An element is an
// ordered pair (range, domain) of numbered patterns; (P,Q) and (PM,QM)
// represent the same element.  Equality is decided by aligning domains over
// a common numbered refinement, never by comparing reduced pairs (reduced
// representatives are not unique in this group).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "brin2v/forest.hpp"
#include "brin2v/pattern.hpp"
#include "brin2v/words.hpp"

namespace brin2v {

struct FractionPair {
  NumberedPattern range;   // P
  NumberedPattern domain;  // Q

  FractionPair() = default;
  FractionPair(NumberedPattern p, NumberedPattern q)
      : range(std::move(p)), domain(std::move(q)) {}

  static FractionPair identity() { return FractionPair(); }

  friend bool operator==(const FractionPair&, const FractionPair&) = default;
};

inline FractionPair pair_of_pi(NumberedPattern p) {
  return FractionPair(std::move(p), NumberedPattern::trivial());
}

inline FractionPair invert(const FractionPair& f) { return FractionPair(f.domain, f.range); }

namespace detail {

inline void order_leafwise(const DyadicRect& rect, const std::vector<DyadicRect>& tiles,
                           std::vector<DyadicRect>& out) {
  if (tiles.size() == 1) {
    out.push_back(tiles[0]);
    return;
  }
  for (const DyadicRect& half : {rect.left_half(), rect.bottom_half()}) {
    std::vector<DyadicRect> in_a, in_b;
    bool ok = true;
    for (const auto& t : tiles) {
      if (half.contains(t))
        in_a.push_back(t);
      else if (!half.overlaps(t))
        in_b.push_back(t);
      else {
        ok = false;
        break;
      }
    }
    if (ok && !in_a.empty() && !in_b.empty()) {
      bool vertical = half == rect.left_half();
      order_leafwise(half, in_a, out);
      order_leafwise(vertical ? rect.right_half() : rect.top_half(), in_b, out);
      return;
    }
  }
  throw std::invalid_argument("invalid tiling");
}

}  // namespace detail

// Number a common refinement of `base`'s tiling by refining base's numbering:
// the subtiles inside the rectangle numbered a get the block of numbers after
// everything inside rectangles numbered below a, in left-right order.
inline NumberedPattern number_refinement(const NumberedPattern& base, const Refinement& tiles) {
  struct Block {
    std::uint64_t square;
    std::vector<DyadicRect> subtiles;  // leaf order
  };
  std::map<std::uint64_t, Block> blocks;  // base number -> block

  std::vector<std::uint64_t> sqs;
  for (const auto& [sq, t] : base.squares()) sqs.push_back(sq);
  for (const auto& [sq, t] : tiles)
    if (!base.square_explicit(sq)) sqs.push_back(sq);
  for (std::uint64_t sq : sqs) {
    auto it = tiles.find(sq);
    for (const auto& t : base.square_tiles(sq)) {
      Block b{sq, {}};
      if (it != tiles.end()) {
        std::vector<DyadicRect> inside;
        for (const auto& r : it->second)
          if (t.rect.contains(r)) inside.push_back(r);
        if (inside.empty()) throw std::invalid_argument("refinement misses a rectangle");
        detail::order_leafwise(t.rect, inside, b.subtiles);
      } else {
        b.subtiles = {t.rect};
      }
      blocks[t.num] = std::move(b);
    }
  }
  if (blocks.empty()) return base;

  std::uint64_t window = blocks.rbegin()->first;
  // tail rectangles below the window keep single blocks
  for (std::uint64_t n = 0; n <= window; ++n) {
    if (blocks.count(n)) continue;
    if (n < base.tail_offset())
      throw std::logic_error("number " + std::to_string(n) + " unaccounted for");
    blocks[n] = Block{n - base.tail_offset(), {DyadicRect::unit()}};
  }

  NumberedPattern out;
  std::map<std::uint64_t, std::vector<NumberedRect>> squares;
  std::uint64_t next = 0;
  for (const auto& [n, b] : blocks) {
    (void)n;
    for (const auto& r : b.subtiles) squares[b.square].push_back({r, next++});
  }
  out.set_tail_offset(base.tail_offset() + (next - (window + 1)));
  for (auto& [sq, ts] : squares) out.set_square(sq, std::move(ts));
  out.canonicalize();
  return out;
}

namespace detail {

// the numbering map between two patterns with identical tilings
inline std::map<std::uint64_t, std::uint64_t> renumbering(const NumberedPattern& a,
                                                          const NumberedPattern& b) {
  std::map<std::uint64_t, std::uint64_t> tau;
  for (const auto& [sq, tiles] : a.squares()) {
    auto bt = b.square_tiles(sq);
    for (const auto& t : tiles)
      for (const auto& u : bt)
        if (t.rect == u.rect && t.num != u.num) tau[t.num] = u.num;
  }
  for (const auto& [sq, tiles] : b.squares()) {
    if (a.square_explicit(sq)) continue;
    std::uint64_t an = a.tail_number(sq);
    if (tiles[0].num != an) tau[an] = tiles[0].num;
  }
  return tau;
}

}  // namespace detail

// Composite of two homeomorphisms (left action, right-to-left composition):
// align f.domain with g.range over their superposition.
inline FractionPair compose(const FractionPair& f, const FractionPair& g) {
  Refinement common = superpose(f.domain, g.range);
  if (common == tiling_of(f.domain)) {
    // f.domain is already the common refinement
    Word m2 = factor(g.range, f.domain);
    return FractionPair(f.range, apply_word(g.domain, m2));
  }
  NumberedPattern refined = number_refinement(f.domain, common);
  Word m = factor(f.domain, refined);
  Word m2 = factor(g.range, refined);
  return FractionPair(apply_word(f.range, m), apply_word(g.domain, m2));
}

// element equality: align the two domains, then compare ranges
inline bool pairs_equal(const FractionPair& f, const FractionPair& g) {
  if (f.domain == g.domain) return f.range == g.range;  // cancellativity
  if (tiling_of(f.domain) == tiling_of(g.domain)) {
    // same tiling: only a renumbering separates the two domains
    auto tau = detail::renumbering(f.domain, g.domain);
    return apply_word(f.range, sigma_word(tau)) == g.range;
  }
  Refinement common = superpose(f.domain, g.domain);
  NumberedPattern refined = number_refinement(f.domain, common);
  Word m = factor(f.domain, refined);
  Word m2 = factor(g.domain, refined);
  return apply_word(f.range, m) == apply_word(g.range, m2);
}

// Greedily strips common trailing carets: whenever the rectangles numbered i
// and i+1 are sibling halves of one parent, same orientation and order, in
// both patterns, both pairs collapse.  The result represents the same
// element but is not a unique minimal representative.
inline FractionPair reduce(FractionPair f) {
  bool dirty = true;
  while (dirty) {
    dirty = false;
    std::uint64_t window = 0;
    for (const auto* pat : {&f.range, &f.domain})
      for (const auto& [sq, ts] : pat->squares())
        for (const auto& t : ts) window = std::max(window, t.num);
    for (std::uint64_t i = 0; i < window && !dirty; ++i) {
      for (Kind k : {Kind::v, Kind::h}) {
        Generator g(k, static_cast<std::uint32_t>(i));
        auto r = unapply_generator(f.range, g);
        if (!r) continue;
        auto d = unapply_generator(f.domain, g);
        if (!d) continue;
        f = FractionPair(std::move(*r), std::move(*d));
        dirty = true;
        break;
      }
    }
  }
  return f;
}

inline bool is_identity(const FractionPair& f) {
  FractionPair r = reduce(f);
  return r.range == r.domain;
}

// evaluation of group words over the pi alphabet (letters may carry inverses)
inline FractionPair letter_pair(const Generator& g) {
  Word w(Alphabet::pi);
  w.letters.push_back(g.sign < 0 ? g.inverse() : g);
  NumberedPattern p = pattern_of_word(w);
  if (g.sign < 0 && !is_involution(g.kind)) return FractionPair(NumberedPattern::trivial(), p);
  return FractionPair(p, NumberedPattern::trivial());
}

inline FractionPair eval_pi_group_word(const Word& w) {
  if (w.alphabet != Alphabet::pi)
    throw std::invalid_argument("eval_pi_group_word expects a pi-alphabet word");
  FractionPair acc;
  for (const auto& g : w.letters) acc = compose(acc, letter_pair(g));
  return acc;
}

// --- the semi-normal LMR form ----------------------------------------------

struct LMRForm {
  Word s;  // v/h word for the range tree, standard numbering
  Word u;  // sigma word: the two numbering permutations composed
  Word t;  // v/h word for the domain tree, standard numbering

  Word as_group_word() const {
    Word w = s;
    w.letters.insert(w.letters.end(), u.letters.begin(), u.letters.end());
    Word ti = t.inverse();
    w.letters.insert(w.letters.end(), ti.letters.begin(), ti.letters.end());
    return w;
  }
};

namespace detail {

// x -> outer^-1(inner(x)) on the union of supports
inline std::map<std::uint64_t, std::uint64_t> compose_perms(
    const std::map<std::uint64_t, std::uint64_t>& inner,
    const std::map<std::uint64_t, std::uint64_t>& outer) {
  std::map<std::uint64_t, std::uint64_t> inv;
  for (const auto& [a, b] : outer) inv[b] = a;
  auto app = [](const std::map<std::uint64_t, std::uint64_t>& m, std::uint64_t x) {
    auto it = m.find(x);
    return it == m.end() ? x : it->second;
  };
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& [a, b] : inner) out[a] = app(inv, b);
  for (const auto& [a, b] : outer) {
    (void)b;
    if (!out.count(a)) out[a] = app(inv, a);
  }
  std::erase_if(out, [](const auto& kv) { return kv.first == kv.second; });
  return out;
}

}  // namespace detail

// f as s u t^-1 with s, t the sorted words of the normalized forests of the
// two patterns; re-evaluating the group word reproduces the element.
inline LMRForm lmr_form(const FractionPair& f) {
  NumberedForest fs = normalized_forest_of_pattern(f.range);
  NumberedForest ft = normalized_forest_of_pattern(f.domain);
  LMRForm out;
  out.s = sorted_word_of_shape(fs);
  out.t = sorted_word_of_shape(ft);
  auto rho_p = numbering_of_forest(fs);
  auto rho_q = numbering_of_forest(ft);
  out.u = sigma_word(detail::compose_perms(rho_p, rho_q));
  return out;
}

// --- the Psi_p letter translation -------------------------------------------

// pi_i = v_0^p sigma_{(p-1)-i} v_0^{-p} and pibar_{p-1} = v_0^p sigma_0 v_0^{-p}

inline Word psi(std::uint32_t p, const Word& m) {
  if (m.alphabet != Alphabet::two_v) throw std::invalid_argument("psi expects a 2v-alphabet word");
  Word u(Alphabet::pi);
  for (const auto& g : m.letters) {
    if (g.kind == Kind::pibar && g.index == p - 1 && p >= 1)
      u.letters.push_back(gs(0));
    else if (g.kind == Kind::pi && p >= 2 && g.index <= p - 2)
      u.letters.push_back(gs((p - 1) - g.index));
    else
      throw std::invalid_argument("psi: letter " + print_word(tv_word({g})) +
                                  " violates the index constraint for p = " + std::to_string(p));
  }
  return u;
}

inline Word psi_inv(std::uint32_t p, const Word& u) {
  if (u.alphabet != Alphabet::pi)
    throw std::invalid_argument("psi_inv expects a pi-alphabet word");
  Word m(Alphabet::two_v);
  for (const auto& g : u.letters) {
    if (g.kind != Kind::sigma || p == 0 || g.index > p - 1)
      throw std::invalid_argument("psi_inv: letter " + print_word(pi_word({g})) +
                                  " violates the index constraint for p = " + std::to_string(p));
    if (g.index == 0)
      m.letters.push_back(gP(p - 1));
    else
      m.letters.push_back(gp((p - 1) - g.index));
  }
  return m;
}

}  // namespace brin2v
