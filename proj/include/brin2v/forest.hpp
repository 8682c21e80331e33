#pragma once

// Labeled, numbered forests: the structure between words and patterns.
// Trees are binary with interior vertices labeled v or h and leaves carrying
// the forest numbering.  A forest stores one tree per square under the same
// tail convention as patterns: a square is stored exactly when its tree is
// nontrivial or its single leaf carries a number other than index + offset.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "brin2v/pattern.hpp"
#include "brin2v/words.hpp"

namespace brin2v {

enum class VH : std::uint8_t { v, h };

inline VH vh_of(Kind k) {
  if (k == Kind::v) return VH::v;
  if (k == Kind::h) return VH::h;
  throw std::invalid_argument("expected a v or h letter");
}

class LabeledTree {
 public:
  struct Node {
    std::int8_t label = -1;  // -1 leaf, 0 = v, 1 = h
    std::int32_t left = -1, right = -1;
    std::uint64_t num = 0;  // leaves only

    friend bool operator==(const Node&, const Node&) = default;
    friend auto operator<=>(const Node&, const Node&) = default;
  };

  LabeledTree() { nodes_.push_back(Node{}); }  // trivial tree, leaf numbered 0

  static LabeledTree leaf(std::uint64_t num) {
    LabeledTree t;
    t.nodes_[0].num = num;
    return t;
  }

  static LabeledTree caret(VH label, const LabeledTree& l, const LabeledTree& r) {
    LabeledTree t;
    t.nodes_.clear();
    t.nodes_.push_back(Node{});
    t.nodes_[0].label = label == VH::v ? 0 : 1;
    t.nodes_[0].left = 1;
    t.append(l, 0);
    t.nodes_[0].right = static_cast<std::int32_t>(t.nodes_.size());
    t.append(r, 0);
    return t;
  }

  std::int32_t root() const { return 0; }
  const Node& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }
  bool is_leaf(std::int32_t i) const { return node(i).label < 0; }
  VH label(std::int32_t i) const { return node(i).label == 0 ? VH::v : VH::h; }
  std::size_t size() const { return nodes_.size(); }

  bool trivial() const { return nodes_.size() == 1; }
  std::size_t caret_count() const { return (nodes_.size() - 1) / 2; }
  std::size_t leaf_count() const { return caret_count() + 1; }

  // leaves in the natural left-right order (= preorder for this layout)
  std::vector<std::int32_t> leaves() const {
    std::vector<std::int32_t> out;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(nodes_.size()); ++i)
      if (is_leaf(i)) out.push_back(i);
    return out;
  }

  std::vector<std::uint64_t> leaf_numbers() const {
    std::vector<std::uint64_t> out;
    for (auto i : leaves()) out.push_back(node(i).num);
    return out;
  }

  std::vector<std::int32_t> interior() const {
    std::vector<std::int32_t> out;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(nodes_.size()); ++i)
      if (!is_leaf(i)) out.push_back(i);
    return out;
  }

  void shift_numbers_above(std::uint64_t n, std::int64_t delta) {
    for (auto& nd : nodes_)
      if (nd.label < 0 && nd.num > n)
        nd.num = static_cast<std::uint64_t>(static_cast<std::int64_t>(nd.num) + delta);
  }

  bool swap_leaf_numbers(std::uint64_t n) {
    Node *a = nullptr, *b = nullptr;
    for (auto& nd : nodes_) {
      if (nd.label >= 0) continue;
      if (nd.num == n) a = &nd;
      if (nd.num == n + 1) b = &nd;
    }
    if (a) a->num = n + 1;
    if (b) b->num = n;
    return a || b;
  }

  bool has_leaf(std::uint64_t n) const {
    for (const auto& nd : nodes_)
      if (nd.label < 0 && nd.num == n) return true;
    return false;
  }

  LabeledTree attach_at_leaf(std::uint64_t target, VH lab) const {
    LabeledTree t;
    t.nodes_.clear();
    build_attached(t.nodes_, 0, target, lab);
    return t;
  }

  friend bool operator==(const LabeledTree&, const LabeledTree&) = default;
  friend auto operator<=>(const LabeledTree& a, const LabeledTree& b) {
    return std::lexicographical_compare_three_way(a.nodes_.begin(), a.nodes_.end(),
                                                  b.nodes_.begin(), b.nodes_.end());
  }

 private:
  std::vector<Node> nodes_;  // preorder: left = parent+1, right after left subtree

  // append a copy of src's subtree rooted at `from`, preorder, returning size
  std::int32_t append(const LabeledTree& src, std::int32_t from) {
    std::int32_t at = static_cast<std::int32_t>(nodes_.size());
    const Node& n = src.node(from);
    nodes_.push_back(Node{n.label, -1, -1, n.num});
    if (n.label >= 0) {
      nodes_[static_cast<std::size_t>(at)].left = static_cast<std::int32_t>(nodes_.size());
      append(src, n.left);
      nodes_[static_cast<std::size_t>(at)].right = static_cast<std::int32_t>(nodes_.size());
      append(src, n.right);
    }
    return at;
  }

  void build_attached(std::vector<Node>& out, std::int32_t from, std::uint64_t target,
                      VH lab) const {
    const Node& n = node(from);
    std::int32_t at = static_cast<std::int32_t>(out.size());
    if (n.label < 0 && n.num == target) {
      out.push_back(Node{lab == VH::v ? std::int8_t{0} : std::int8_t{1}, -1, -1, 0});
      out[static_cast<std::size_t>(at)].left = static_cast<std::int32_t>(out.size());
      out.push_back(Node{-1, -1, -1, target});
      out[static_cast<std::size_t>(at)].right = static_cast<std::int32_t>(out.size());
      out.push_back(Node{-1, -1, -1, target + 1});
      return;
    }
    out.push_back(Node{n.label, -1, -1, n.num});
    if (n.label >= 0) {
      out[static_cast<std::size_t>(at)].left = static_cast<std::int32_t>(out.size());
      build_attached(out, n.left, target, lab);
      out[static_cast<std::size_t>(at)].right = static_cast<std::int32_t>(out.size());
      build_attached(out, n.right, target, lab);
    }
  }
};

class NumberedForest {
 public:
  NumberedForest() = default;

  static NumberedForest trivial() { return NumberedForest(); }

  const std::map<std::uint64_t, LabeledTree>& trees() const { return trees_; }
  std::uint64_t tail_offset() const { return tail_offset_; }
  std::uint64_t tail_start() const { return trees_.empty() ? 0 : trees_.rbegin()->first; }

  LabeledTree tree_at(std::uint64_t sq) const {
    auto it = trees_.find(sq);
    if (it != trees_.end()) return it->second;
    return LabeledTree::leaf(sq + tail_offset_);
  }

  bool square_explicit(std::uint64_t sq) const { return trees_.count(sq) != 0; }

  std::uint64_t interior_count() const {
    std::uint64_t n = 0;
    for (const auto& [sq, t] : trees_) n += t.caret_count();
    return n;
  }

  void set_tree(std::uint64_t sq, LabeledTree t) { trees_[sq] = std::move(t); }
  void set_tail_offset(std::uint64_t j) { tail_offset_ = j; }

  void materialize(std::uint64_t sq) {
    if (!square_explicit(sq)) trees_[sq] = LabeledTree::leaf(sq + tail_offset_);
  }

  void shift_numbers_above(std::uint64_t n, std::int64_t delta) {
    for (auto& [sq, t] : trees_) {
      (void)sq;
      t.shift_numbers_above(n, delta);
    }
  }

  void swap_leaf_pair(std::uint64_t n) {
    for (auto& [sq, t] : trees_) {
      (void)sq;
      t.swap_leaf_numbers(n);
    }
  }

  void canonicalize() {
    for (auto it = trees_.begin(); it != trees_.end();) {
      if (it->second.trivial() && it->second.node(0).num == it->first + tail_offset_)
        it = trees_.erase(it);
      else
        ++it;
    }
  }

  friend bool operator==(const NumberedForest&, const NumberedForest&) = default;

 private:
  std::map<std::uint64_t, LabeledTree> trees_;
  std::uint64_t tail_offset_ = 0;
};

inline NumberedForest trivial_forest() { return NumberedForest(); }

namespace detail {

inline std::uint64_t forest_leaf_square(const NumberedForest& f, std::uint64_t n) {
  for (const auto& [sq, t] : f.trees())
    if (t.has_leaf(n)) return sq;
  if (n < f.tail_offset() || f.square_explicit(n - f.tail_offset()))
    throw std::logic_error("leaf number " + std::to_string(n) + " not present in forest");
  return n - f.tail_offset();
}

inline void forest_attach(NumberedForest& f, std::uint64_t n, VH lab) {
  std::uint64_t sq = forest_leaf_square(f, n);
  f.materialize(sq);
  if (n >= f.tail_offset()) {
    std::uint64_t limit = n - f.tail_offset();
    for (std::uint64_t q = 0; q < limit; ++q) f.materialize(q);
  }
  f.set_tail_offset(f.tail_offset() + 1);
  f.shift_numbers_above(n, +1);
  f.set_tree(sq, f.tree_at(sq).attach_at_leaf(n, lab));
  f.canonicalize();
}

inline void forest_swap(NumberedForest& f, std::uint64_t n) {
  f.materialize(forest_leaf_square(f, n));
  f.materialize(forest_leaf_square(f, n + 1));
  f.swap_leaf_pair(n);
  f.canonicalize();
}

}  // namespace detail

inline NumberedForest forest_of_word(const Word& w) {
  if (w.alphabet != Alphabet::pi || !w.monoid_positive())
    throw std::invalid_argument("forest_of_word expects a positive pi-alphabet word");
  NumberedForest f;
  for (const auto& g : w.letters) {
    switch (g.kind) {
      case Kind::v: detail::forest_attach(f, g.index, VH::v); break;
      case Kind::h: detail::forest_attach(f, g.index, VH::h); break;
      case Kind::sigma: detail::forest_swap(f, g.index); break;
      default: break;
    }
  }
  return f;
}

namespace detail {

inline void leaves_to_tiles(const LabeledTree& t, std::int32_t node, const DyadicRect& rect,
                            std::vector<NumberedRect>& out) {
  if (t.is_leaf(node)) {
    out.push_back({rect, t.node(node).num});
    return;
  }
  if (t.label(node) == VH::v) {
    leaves_to_tiles(t, t.node(node).left, rect.left_half(), out);
    leaves_to_tiles(t, t.node(node).right, rect.right_half(), out);
  } else {
    leaves_to_tiles(t, t.node(node).left, rect.bottom_half(), out);
    leaves_to_tiles(t, t.node(node).right, rect.top_half(), out);
  }
}

}  // namespace detail

inline NumberedPattern pattern_of_forest(const NumberedForest& f) {
  NumberedPattern p;
  p.set_tail_offset(f.tail_offset());
  for (const auto& [sq, t] : f.trees()) {
    std::vector<NumberedRect> tiles;
    detail::leaves_to_tiles(t, t.root(), DyadicRect::unit(), tiles);
    p.set_square(sq, std::move(tiles));
  }
  p.canonicalize();
  return p;
}

// --- the rewriting rule on v/h words ---------------------------------------

// x_j y_i -> y_i x_{j+1} whenever i < j; the unique irreducible form has
// nondecreasing subscripts.
inline bool rewrite_step_at(Word& w, std::size_t p) {
  if (p + 1 >= w.letters.size()) return false;
  Generator a = w.letters[p], b = w.letters[p + 1];
  if (b.index >= a.index) return false;
  w.letters[p] = b;
  w.letters[p + 1] = Generator(a.kind, a.index + 1);
  return true;
}

inline Word rewrite_sorted(Word w) {
  for (const auto& g : w.letters)
    if (g.kind == Kind::sigma || g.sign < 0)
      throw std::invalid_argument("rewrite_sorted expects a word over the v_i and h_i");
  bool dirty = true;
  while (dirty) {
    dirty = false;
    for (std::size_t p = 0; p + 1 < w.letters.size(); ++p)
      if (rewrite_step_at(w, p)) dirty = true;
  }
  return w;
}

// --- secondary labels and normalization -------------------------------------

namespace detail {

inline bool divides_v(const LabeledTree& t, std::int32_t n) {
  if (t.is_leaf(n)) return false;
  if (t.label(n) == VH::v) return true;
  return divides_v(t, t.node(n).left) && divides_v(t, t.node(n).right);
}

inline bool divides_h(const LabeledTree& t, std::int32_t n) {
  if (t.is_leaf(n)) return false;
  if (t.label(n) == VH::h) return true;
  return divides_h(t, t.node(n).left) && divides_h(t, t.node(n).right);
}

inline bool fully_divided(const LabeledTree& t, std::int32_t n) {
  return !t.is_leaf(n) && divides_v(t, n) && divides_h(t, n);
}

}  // namespace detail

// interior vertices whose rectangle is fully divided by the forest's pattern
inline std::set<std::pair<std::uint64_t, std::int32_t>> secondary_labels(const NumberedForest& f) {
  std::set<std::pair<std::uint64_t, std::int32_t>> out;
  for (const auto& [sq, t] : f.trees())
    for (auto n : t.interior())
      if (detail::fully_divided(t, n)) out.insert({sq, n});
  return out;
}

inline bool is_normalized(const NumberedForest& f) {
  for (const auto& [sq, t] : f.trees())
    for (auto n : t.interior())
      if (t.label(n) == VH::h && detail::fully_divided(t, n)) return false;
  return true;
}

// --- normalized forest straight from the pattern ----------------------------

namespace detail {

inline LabeledTree tree_from_tiles(const DyadicRect& rect,
                                   const std::vector<NumberedRect>& tiles) {
  if (tiles.size() == 1) {
    if (tiles[0].rect != rect) throw std::invalid_argument("invalid tiling");
    return LabeledTree::leaf(tiles[0].num);
  }
  DyadicRect left = rect.left_half();
  std::vector<NumberedRect> in_a, in_b;
  bool v_ok = true;
  for (const auto& t : tiles) {
    if (left.contains(t.rect))
      in_a.push_back(t);
    else if (!left.overlaps(t.rect))
      in_b.push_back(t);
    else {
      v_ok = false;
      break;
    }
  }
  if (v_ok && !in_a.empty() && !in_b.empty())
    return LabeledTree::caret(VH::v, tree_from_tiles(left, in_a),
                              tree_from_tiles(rect.right_half(), in_b));
  DyadicRect bottom = rect.bottom_half();
  in_a.clear();
  in_b.clear();
  for (const auto& t : tiles) {
    if (bottom.contains(t.rect))
      in_a.push_back(t);
    else if (!bottom.overlaps(t.rect))
      in_b.push_back(t);
    else
      throw std::invalid_argument("invalid tiling");
  }
  if (in_a.empty() || in_b.empty()) throw std::invalid_argument("invalid tiling");
  return LabeledTree::caret(VH::h, tree_from_tiles(bottom, in_a),
                            tree_from_tiles(rect.top_half(), in_b));
}

}  // namespace detail

inline NumberedForest normalized_forest_of_pattern(const NumberedPattern& p) {
  NumberedForest f;
  f.set_tail_offset(p.tail_offset());
  for (const auto& [sq, tiles] : p.squares())
    f.set_tree(sq, detail::tree_from_tiles(DyadicRect::unit(), tiles));
  f.canonicalize();
  return f;
}

// --- canonical words --------------------------------------------------------

namespace detail {

inline void sorted_word_emit(const LabeledTree& t, std::int32_t node, std::uint64_t base,
                             std::uint64_t leaves_left, Word& out) {
  if (t.is_leaf(node)) return;
  out.letters.push_back(Generator(t.label(node) == VH::v ? Kind::v : Kind::h,
                                  static_cast<std::uint32_t>(base + leaves_left)));
  const auto& nd = t.node(node);
  // count leaves of the left subtree to position the right subtree
  std::uint64_t left_leaves = 0;
  {
    // subtree of `left` occupies nodes [left, right)
    for (std::int32_t i = nd.left; i < nd.right; ++i)
      if (t.is_leaf(i)) ++left_leaves;
  }
  sorted_word_emit(t, nd.left, base, leaves_left, out);
  sorted_word_emit(t, nd.right, base, leaves_left + left_leaves, out);
}

}  // namespace detail

// The unique sorted irreducible v/h word building the forest's shape with the
// standard left-right leaf numbering.  Carets are emitted in preorder; the
// subscript of a caret is the number of final leaves strictly to its left.
inline Word sorted_word_of_shape(const NumberedForest& f) {
  Word out(Alphabet::pi);
  std::uint64_t extra = 0;  // surplus contributed by earlier stored trees
  for (const auto& [sq, t] : f.trees()) {
    detail::sorted_word_emit(t, t.root(), sq + extra, 0, out);
    extra += t.leaf_count() - 1;
  }
  return out;
}

// standard-numbering -> actual-numbering map for the leaves of f; unstored
// squares below the last stored tree still contribute, since their standard
// index lags the tail offset until every earlier caret has been counted
inline std::map<std::uint64_t, std::uint64_t> numbering_of_forest(const NumberedForest& f) {
  std::map<std::uint64_t, std::uint64_t> perm;
  std::uint64_t extra = 0;
  std::uint64_t next = 0;
  for (const auto& [sq, t] : f.trees()) {
    for (std::uint64_t q = next; q < sq; ++q) perm[q + extra] = q + f.tail_offset();
    std::uint64_t base = sq + extra;
    for (auto n : t.leaf_numbers()) perm[base++] = n;
    extra += t.leaf_count() - 1;
    next = sq + 1;
  }
  std::erase_if(perm, [](const auto& kv) { return kv.first == kv.second; });
  return perm;
}

// Canonical word for a pattern: the sorted shape word followed by the bubble
// sigma word carrying the standard numbering to the pattern's numbering.
// Identical canonical words decide equality in the monoid.
inline Word canonical_word_pi(const NumberedPattern& p) {
  NumberedForest f = normalized_forest_of_pattern(p);
  Word out = sorted_word_of_shape(f);
  for (auto i : sigma_sort_indices(numbering_of_forest(f))) out.letters.push_back(gs(i));
  return out;
}

}  // namespace brin2v
