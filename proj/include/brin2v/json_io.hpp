#pragma once

// JSON forms for words, patterns, forests and fraction pairs.
//
//   word:     {"alphabet":"pi"|"2v","letters":[{"kind":"v","index":0,"sign":1},...]}
//   pattern:  {"tail_start":k,"tail_offset":j,
//              "squares":[{"index":i,"rects":[{"xn":..,"xe":..,"yn":..,"ye":..,"num":..}]}]}
//   forest:   {"trees":[{"label":"v","left":...,"right":...}|{"leaf":n},...],"tail_offset":j}
//   fraction: {"range":<pattern>,"domain":<pattern>}

#include <json.hpp>

#include "brin2v/forest.hpp"
#include "brin2v/fractions.hpp"
#include "brin2v/pattern.hpp"
#include "brin2v/words.hpp"

namespace brin2v {

using json = nlohmann::json;

inline json word_to_json(const Word& w) {
  json letters = json::array();
  for (const auto& g : w.letters)
    letters.push_back({{"kind", std::string(1, token_char(g.kind))},
                       {"index", g.index},
                       {"sign", g.sign}});
  return {{"alphabet", w.alphabet == Alphabet::pi ? "pi" : "2v"}, {"letters", letters}};
}

inline Word word_from_json(const json& j) {
  std::string alph = j.at("alphabet").get<std::string>();
  if (alph != "pi" && alph != "2v") throw std::invalid_argument("unknown alphabet " + alph);
  Word w(alph == "pi" ? Alphabet::pi : Alphabet::two_v);
  for (const auto& item : j.at("letters")) {
    std::string kind = item.at("kind").get<std::string>();
    if (kind.size() != 1 || !kind_of_char(kind[0]))
      throw std::invalid_argument("unknown letter kind " + kind);
    Kind k = *kind_of_char(kind[0]);
    if (alphabet_of(k) != w.alphabet)
      throw std::invalid_argument("letter kind " + kind + " does not match the alphabet");
    int sign = item.value("sign", 1);
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be 1 or -1");
    w.letters.emplace_back(k, item.at("index").get<std::uint32_t>(), sign);
  }
  return w;
}

inline json pattern_to_json(const NumberedPattern& p) {
  json squares = json::array();
  for (const auto& [sq, tiles] : p.squares()) {
    json rects = json::array();
    for (const auto& t : tiles)
      rects.push_back({{"xn", t.rect.x.num},
                       {"xe", t.rect.x.exp},
                       {"yn", t.rect.y.num},
                       {"ye", t.rect.y.exp},
                       {"num", t.num}});
    squares.push_back({{"index", sq}, {"rects", rects}});
  }
  return {{"tail_start", p.tail_start()}, {"tail_offset", p.tail_offset()},
          {"squares", squares}};
}

inline NumberedPattern pattern_from_json(const json& j) {
  NumberedPattern p;
  p.set_tail_offset(j.at("tail_offset").get<std::uint64_t>());
  for (const auto& sq : j.at("squares")) {
    std::vector<NumberedRect> tiles;
    for (const auto& r : sq.at("rects"))
      tiles.push_back({DyadicRect(DyadicInterval(r.at("xn").get<std::uint64_t>(),
                                                 r.at("xe").get<std::uint32_t>()),
                                  DyadicInterval(r.at("yn").get<std::uint64_t>(),
                                                 r.at("ye").get<std::uint32_t>())),
                       r.at("num").get<std::uint64_t>()});
    p.set_square(sq.at("index").get<std::uint64_t>(), std::move(tiles));
  }
  p.canonicalize();
  p.validate();
  // every stored tiling must admit a halving certificate
  normalized_forest_of_pattern(p);
  return p;
}

namespace detail {

inline json tree_to_json(const LabeledTree& t, std::int32_t node) {
  if (t.is_leaf(node)) return {{"leaf", t.node(node).num}};
  return {{"label", t.label(node) == VH::v ? "v" : "h"},
          {"left", tree_to_json(t, t.node(node).left)},
          {"right", tree_to_json(t, t.node(node).right)}};
}

inline LabeledTree tree_from_json(const json& j) {
  if (j.contains("leaf")) return LabeledTree::leaf(j.at("leaf").get<std::uint64_t>());
  std::string lab = j.at("label").get<std::string>();
  if (lab != "v" && lab != "h") throw std::invalid_argument("tree label must be v or h");
  return LabeledTree::caret(lab == "v" ? VH::v : VH::h, tree_from_json(j.at("left")),
                            tree_from_json(j.at("right")));
}

}  // namespace detail

inline json forest_to_json(const NumberedForest& f) {
  json trees = json::array();
  std::uint64_t top = f.trees().empty() ? 0 : f.tail_start() + 1;
  for (std::uint64_t sq = 0; sq < top; ++sq)
    trees.push_back(detail::tree_to_json(f.tree_at(sq), 0));
  return {{"trees", trees}, {"tail_offset", f.tail_offset()}};
}

inline NumberedForest forest_from_json(const json& j) {
  NumberedForest f;
  f.set_tail_offset(j.at("tail_offset").get<std::uint64_t>());
  std::uint64_t sq = 0;
  for (const auto& t : j.at("trees")) f.set_tree(sq++, detail::tree_from_json(t));
  f.canonicalize();
  return f;
}

inline json fraction_to_json(const FractionPair& f) {
  return {{"range", pattern_to_json(f.range)}, {"domain", pattern_to_json(f.domain)}};
}

inline FractionPair fraction_from_json(const json& j) {
  return FractionPair(pattern_from_json(j.at("range")), pattern_from_json(j.at("domain")));
}

}  // namespace brin2v
