#pragma once

// The group of pattern-pair homeomorphisms supported on the first square:
// generator table, evaluation, membership, the trunk+forest tree codec for
// C/A/B words, and the canonical-word pipeline that decides the word problem.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "brin2v/forest.hpp"
#include "brin2v/fractions.hpp"
#include "brin2v/pattern.hpp"
#include "brin2v/words.hpp"

namespace brin2v {

// --- generators --------------------------------------------------------------

inline Word v0_power_word(std::uint32_t count) {
  Word w(Alphabet::pi);
  for (std::uint32_t i = 0; i < count; ++i) w.letters.push_back(gv(0));
  return w;
}

inline NumberedPattern v0_power_pattern(std::uint32_t count) {
  return pattern_of_word(v0_power_word(count));
}

// A_i = (v0^{i+1} v1, v0^{i+2})        B_i = (v0^{i+1} h1, v0^{i+2})
// C_i = (v0^i h0, v0^{i+1})            pi_i = (v0^{i+2} s1, v0^{i+2})
// pibar_i = (v0^{i+1} s0, v0^{i+1})
inline FractionPair generator_pair(const Generator& g) {
  if (alphabet_of(g.kind) != Alphabet::two_v || g.sign < 0)
    throw std::invalid_argument("generator_pair expects a positive 2v generator");
  std::uint32_t i = g.index;
  Word range(Alphabet::pi);
  std::uint32_t dom_power = 0;
  switch (g.kind) {
    case Kind::A:
      range = v0_power_word(i + 1);
      range.letters.push_back(gv(1));
      dom_power = i + 2;
      break;
    case Kind::B:
      range = v0_power_word(i + 1);
      range.letters.push_back(gh(1));
      dom_power = i + 2;
      break;
    case Kind::C:
      range = v0_power_word(i);
      range.letters.push_back(gh(0));
      dom_power = i + 1;
      break;
    case Kind::pi:
      range = v0_power_word(i + 2);
      range.letters.push_back(gs(1));
      dom_power = i + 2;
      break;
    case Kind::pibar:
      range = v0_power_word(i + 1);
      range.letters.push_back(gs(0));
      dom_power = i + 1;
      break;
    default: break;
  }
  return FractionPair(pattern_of_word(range), v0_power_pattern(dom_power));
}

inline FractionPair eval_word(const Word& w) {
  if (w.alphabet == Alphabet::pi) return eval_pi_group_word(w);
  FractionPair acc;
  for (const auto& g : w.letters) {
    FractionPair gp = generator_pair(g.sign < 0 ? g.inverse() : g);
    acc = compose(acc, g.sign < 0 ? invert(gp) : gp);
  }
  return acc;
}

// --- membership ---------------------------------------------------------------

// The element acts as the identity off the first square exactly when every
// rectangle outside S_0 sits at the same place, with the same number, in both
// patterns.  This reads off any representative.
inline bool in_two_v(const FractionPair& f) {
  if (f.range.tail_offset() != f.domain.tail_offset()) return false;
  std::uint64_t window = 0;
  for (const auto* pat : {&f.range, &f.domain})
    for (const auto& [sq, ts] : pat->squares())
      for (const auto& t : ts) window = std::max(window, t.num);
  for (std::uint64_t n = 0; n <= window; ++n) {
    auto r = f.range.locate(n);
    auto d = f.domain.locate(n);
    bool r_in = r.first == 0;
    bool d_in = d.first == 0;
    if (r_in != d_in) return false;
    if (!r_in && r != d) return false;
  }
  return true;
}

// --- trunk + forest decomposition ----------------------------------------------

// A tree as its maximal left-edge path (the trunk, carets numbered from the
// top) plus the forest hanging off the right children; forest[i] hangs on
// caret i, and the leftmost leaf carries nothing.
struct TrunkTree {
  std::vector<VH> trunk_labels;
  std::vector<LabeledTree> forest;

  std::size_t trunk_length() const { return trunk_labels.size(); }

  bool minimal() const {
    if (trunk_labels.empty()) return forest.empty();
    return trunk_labels.back() == VH::h || !forest.back().trivial();
  }

  friend bool operator==(const TrunkTree&, const TrunkTree&) = default;
};

namespace detail {

inline LabeledTree subtree(const LabeledTree& t, std::int32_t node) {
  if (t.is_leaf(node)) return LabeledTree::leaf(t.node(node).num);
  return LabeledTree::caret(t.label(node), subtree(t, t.node(node).left),
                            subtree(t, t.node(node).right));
}

inline LabeledTree mirror(const LabeledTree& t, std::int32_t node = 0) {
  if (t.is_leaf(node)) return LabeledTree::leaf(t.node(node).num);
  return LabeledTree::caret(t.label(node), mirror(t, t.node(node).right),
                            mirror(t, t.node(node).left));
}

}  // namespace detail

inline TrunkTree decompose_trunk(const LabeledTree& t) {
  TrunkTree out;
  std::int32_t node = t.root();
  while (!t.is_leaf(node)) {
    out.trunk_labels.push_back(t.label(node));
    out.forest.push_back(detail::subtree(t, t.node(node).right));
    node = t.node(node).left;
  }
  return out;
}

inline LabeledTree compose_trunk(const TrunkTree& t) {
  LabeledTree node = LabeledTree::leaf(0);
  for (std::size_t i = t.trunk_labels.size(); i-- > 0;)
    node = LabeledTree::caret(t.trunk_labels[i], node, t.forest[i]);
  return node;
}

// drop bottom v-carets with nothing attached (extensions to the left)
inline TrunkTree strip_to_primary(TrunkTree t) {
  while (!t.trunk_labels.empty() && t.trunk_labels.back() == VH::v && t.forest.back().trivial()) {
    t.trunk_labels.pop_back();
    t.forest.pop_back();
  }
  return t;
}

// --- the letterwise builder (C then A/B then pi) --------------------------------

struct LBuild {
  Word t = Word(Alphabet::pi);       // v/h letters, |t| = k
  std::uint64_t k = 0;               // power of v_0 on the domain side
  Word sigmas = Word(Alphabet::pi);  // trailing sigma word
  TrunkTree primary;                 // primary tree of the C/A/B part

  FractionPair as_pair() const {
    Word range = t;
    range.letters.insert(range.letters.end(), sigmas.letters.begin(), sigmas.letters.end());
    return FractionPair(pattern_of_word(range),
                        v0_power_pattern(static_cast<std::uint32_t>(k)));
  }
};

// closed form for the primary trunk length of C_{i_0}..C_{i_n} X_{i_{n+1}}..X_{i_{l-1}}
inline std::uint64_t trunk_length_formula(const std::vector<std::uint32_t>& c_indices,
                                          const std::vector<std::uint32_t>& x_indices) {
  std::uint64_t m = 0;
  std::int64_t n = static_cast<std::int64_t>(c_indices.size()) - 1;
  if (n >= 0) m = std::max<std::uint64_t>(m, c_indices.back() + 1);
  for (std::size_t x = 0; x < x_indices.size(); ++x) {
    std::int64_t j = n + 1 + static_cast<std::int64_t>(x);
    std::int64_t val = static_cast<std::int64_t>(x_indices[x]) + n + 2 - j;
    if (val > 0) m = std::max<std::uint64_t>(m, static_cast<std::uint64_t>(val));
  }
  return m;
}

inline LBuild tree_from_L(const Word& l) {
  if (l.alphabet != Alphabet::two_v)
    throw std::invalid_argument("tree_from_L expects a 2v-alphabet word");
  LBuild out;
  int phase = 0;  // 0 = C prefix, 1 = A/B, 2 = pi
  std::optional<std::uint32_t> last_c;
  for (const auto& g : l.letters) {
    if (g.sign < 0) throw std::invalid_argument("tree_from_L expects a positive word");
    switch (g.kind) {
      case Kind::C: {
        if (phase > 0) throw std::invalid_argument("C letters must form a prefix");
        if (last_c && g.index <= *last_c)
          throw std::invalid_argument("non-increasing C indices");
        last_c = g.index;
        std::uint64_t d = g.index - out.k;  // increasing C indices keep this nonnegative
        for (std::uint64_t q = 0; q < d; ++q) out.t.letters.push_back(gv(0));
        out.t.letters.push_back(gh(0));
        out.k = g.index + 1;
        break;
      }
      case Kind::A:
      case Kind::B: {
        if (phase > 1) throw std::invalid_argument("A/B letters must precede the pi letters");
        phase = 1;
        Kind x = g.kind == Kind::A ? Kind::v : Kind::h;
        std::uint64_t n = out.k;
        if (n <= g.index + 1) {
          for (std::uint64_t q = 0; q < g.index + 1 - n; ++q) out.t.letters.push_back(gv(0));
          out.t.letters.push_back(Generator(x, 1));
          out.k = g.index + 2;
        } else {
          out.t.letters.push_back(Generator(x, static_cast<std::uint32_t>(n - g.index)));
          out.k = n + 1;
        }
        break;
      }
      case Kind::pi: {
        phase = 2;
        std::uint64_t n = out.k;
        if (n >= g.index + 2) {
          out.sigmas.letters.push_back(gs(static_cast<std::uint32_t>((n - 1) - g.index)));
        } else {
          std::uint64_t j = g.index + 2 - n;
          // each appended v_0 crosses the existing sigma letters, raising
          // their subscripts by one
          for (auto& s : out.sigmas.letters) s.index += static_cast<std::uint32_t>(j);
          for (std::uint64_t q = 0; q < j; ++q) out.t.letters.push_back(gv(0));
          out.k = n + j;
          out.sigmas.letters.push_back(gs(1));
        }
        break;
      }
      default:
        throw std::invalid_argument("tree_from_L accepts only C, A, B and pi letters");
    }
  }
  NumberedForest f = forest_of_word(out.t);
  out.primary = strip_to_primary(decompose_trunk(f.tree_at(0)));
  return out;
}

// --- the inverse codec -----------------------------------------------------------

// C letters from the h-labeled trunk carets, then the A/B word of the
// attached forest: mirror each tree and emit its sorted caret word with A for
// v and B for h.
inline Word L_from_tree(const TrunkTree& t) {
  if (!t.minimal())
    throw std::invalid_argument("tree is not a primary tree (left extension present)");
  Word out(Alphabet::two_v);
  for (std::size_t i = 0; i < t.trunk_labels.size(); ++i)
    if (t.trunk_labels[i] == VH::h) out.letters.push_back(gC(static_cast<std::uint32_t>(i)));
  Word vh(Alphabet::pi);
  std::uint64_t extra = 0;
  for (std::size_t i = 0; i < t.forest.size(); ++i) {
    const LabeledTree mirrored = detail::mirror(t.forest[i]);
    detail::sorted_word_emit(mirrored, mirrored.root(), i + extra, 0, vh);
    extra += mirrored.leaf_count() - 1;
  }
  for (const auto& g : vh.letters)
    out.letters.push_back(Generator(g.kind == Kind::v ? Kind::A : Kind::B, g.index));
  return out;
}

// --- canonical representative -------------------------------------------------

namespace detail {

struct SibPair {
  std::uint64_t first_num, second_num;
  VH orientation;
  friend bool operator==(const SibPair&, const SibPair&) = default;
  friend auto operator<=>(const SibPair&, const SibPair&) = default;
};

inline std::vector<SibPair> sibling_pairs(const NumberedPattern& p) {
  std::vector<SibPair> out;
  for (const auto& [sq, tiles] : p.squares()) {
    (void)sq;
    for (std::size_t a = 0; a < tiles.size(); ++a)
      for (std::size_t b = 0; b < tiles.size(); ++b) {
        if (a == b) continue;
        const auto& ra = tiles[a].rect;
        const auto& rb = tiles[b].rect;
        if (ra.y == rb.y && ra.x.exp == rb.x.exp && ra.x.exp > 0 && ra.x.num % 2 == 0 &&
            rb.x.num == ra.x.num + 1)
          out.push_back({tiles[a].num, tiles[b].num, VH::v});
        if (ra.x == rb.x && ra.y.exp == rb.y.exp && ra.y.exp > 0 && ra.y.num % 2 == 0 &&
            rb.y.num == ra.y.num + 1)
          out.push_back({tiles[a].num, tiles[b].num, VH::h});
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t max_explicit_number(const FractionPair& f) {
  std::uint64_t w = 0;
  for (const auto* pat : {&f.range, &f.domain})
    for (const auto& [sq, ts] : pat->squares())
      for (const auto& t : ts) w = std::max(w, t.num);
  return w;
}

// strip one matched caret pair, renumbering both sides so the carets sit on
// the top two numbers first
inline FractionPair strip_matched(FractionPair f, const SibPair& s) {
  std::uint64_t w = max_explicit_number(f);
  std::map<std::uint64_t, std::uint64_t> tau;
  for (std::uint64_t x = 0; x <= w; ++x) {
    if (x == s.first_num)
      tau[x] = w - 1;
    else if (x == s.second_num)
      tau[x] = w;
    else
      tau[x] = x - (x > s.first_num ? 1 : 0) - (x > s.second_num ? 1 : 0);
  }
  std::erase_if(tau, [](const auto& kv) { return kv.first == kv.second; });
  Word wt = sigma_word(tau);
  NumberedPattern r = apply_word(f.range, wt);
  NumberedPattern d = apply_word(f.domain, wt);
  Generator g(s.orientation == VH::v ? Kind::v : Kind::h, static_cast<std::uint32_t>(w - 1));
  auto r2 = unapply_generator(std::move(r), g);
  auto d2 = unapply_generator(std::move(d), g);
  if (!r2 || !d2) throw std::logic_error("matched caret failed to strip");
  return FractionPair(std::move(*r2), std::move(*d2));
}

}  // namespace detail

// The conforming representative used by the canonical form: matched caret
// pairs (same orientation, same number order, in both patterns) are stripped
// to exhaustion, then a common renumbering puts the surviving numbers in tail
// order.  The tiling pair this reaches is the minimal one; the remaining
// sigma freedom cancels in the middle word.
inline FractionPair conforming_representative(const FractionPair& f0) {
  if (!in_two_v(f0)) throw std::invalid_argument("element is not in 2V");
  FractionPair f = f0;
  for (;;) {
    auto rs = detail::sibling_pairs(f.range);
    auto ds = detail::sibling_pairs(f.domain);
    std::optional<detail::SibPair> pick;
    for (const auto& s : rs) {
      if (std::find(ds.begin(), ds.end(), s) != ds.end()) {
        pick = s;
        break;
      }
    }
    if (!pick) break;
    f = detail::strip_matched(std::move(f), *pick);
  }
  // rank the square-0 numbers, push everything else to tail order
  std::uint64_t n = f.range.square_tiles(0).size();
  std::map<std::uint64_t, std::uint64_t> tau;
  std::vector<std::uint64_t> in0;
  for (const auto& t : f.range.square_tiles(0)) in0.push_back(t.num);
  std::sort(in0.begin(), in0.end());
  for (std::size_t i = 0; i < in0.size(); ++i) tau[in0[i]] = i;
  for (const auto& [sq, tiles] : f.range.squares())
    if (sq != 0) tau[tiles[0].num] = n - 1 + sq;
  std::erase_if(tau, [](const auto& kv) { return kv.first == kv.second; });
  if (!tau.empty()) {
    Word wt = sigma_word(tau);
    f = FractionPair(apply_word(f.range, wt), apply_word(f.domain, wt));
  }
  return f;
}

// --- canonical words and the word problem ---------------------------------------

struct CanonicalTwoVWord {
  Word left = Word(Alphabet::two_v);    // C prefix followed by an A/B word
  Word middle = Word(Alphabet::two_v);  // pibar_{p-1} / pi_i letters
  Word right = Word(Alphabet::two_v);   // inverse of an L-shaped word

  Word as_word() const {
    Word w = left;
    w.letters.insert(w.letters.end(), middle.letters.begin(), middle.letters.end());
    w.letters.insert(w.letters.end(), right.letters.begin(), right.letters.end());
    return w;
  }

  friend bool operator==(const CanonicalTwoVWord&, const CanonicalTwoVWord&) = default;
};

inline CanonicalTwoVWord canonical_word_2v(const FractionPair& f0) {
  FractionPair f = conforming_representative(f0);
  CanonicalTwoVWord out;
  std::uint64_t n = f.range.square_tiles(0).size();
  if (n == 1) return out;
  std::uint32_t p = static_cast<std::uint32_t>(n - 1);

  LabeledTree ts = detail::tree_from_tiles(DyadicRect::unit(), f.range.square_tiles(0));
  LabeledTree tt = detail::tree_from_tiles(DyadicRect::unit(), f.domain.square_tiles(0));

  std::map<std::uint64_t, std::uint64_t> rho_p, rho_q;
  {
    std::uint64_t i = 0;
    for (auto num : ts.leaf_numbers()) rho_p[i++] = num;
    i = 0;
    for (auto num : tt.leaf_numbers()) rho_q[i++] = num;
  }
  auto u = detail::compose_perms(rho_p, rho_q);
  out.middle = psi_inv(p, sigma_word(u));

  out.left = L_from_tree(strip_to_primary(decompose_trunk(ts)));
  out.right = L_from_tree(strip_to_primary(decompose_trunk(tt))).inverse();
  return out;
}

inline bool word_problem_2v(const Word& w) { return is_identity(eval_word(w)); }

}  // namespace brin2v
