#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "brin2v/forest.hpp"
#include "brin2v/pattern.hpp"

using namespace brin2v;

namespace {

Word rand_positive_word(std::mt19937& rng, int maxlen, std::uint32_t maxidx) {
  Word w(Alphabet::pi);
  int len = static_cast<int>(rng() % static_cast<unsigned>(maxlen + 1));
  for (int i = 0; i < len; ++i) {
    int which = static_cast<int>(rng() % 3);
    std::uint32_t idx = rng() % (maxidx + 1);
    w.letters.push_back(which == 0 ? gv(idx) : which == 1 ? gh(idx) : gs(idx));
  }
  return w;
}

// every rewrite sequence from w, used as the oracle for unique normal forms
std::set<std::string> all_normal_forms(const Word& w) {
  std::set<std::string> forms;
  std::vector<Word> stack{w};
  std::set<std::string> seen;
  while (!stack.empty()) {
    Word cur = stack.back();
    stack.pop_back();
    if (!seen.insert(print_word(cur)).second) continue;
    bool any = false;
    for (std::size_t p = 0; p + 1 < cur.letters.size(); ++p) {
      Word next = cur;
      if (rewrite_step_at(next, p)) {
        any = true;
        stack.push_back(next);
      }
    }
    if (!any) forms.insert(print_word(cur));
  }
  return forms;
}

}  // namespace

TEST_CASE("forest_of_word basics") {
  NumberedForest f = forest_of_word(Word(Alphabet::pi));
  CHECK(f == trivial_forest());
  CHECK(f.tree_at(3).trivial());
  CHECK(f.tree_at(3).node(0).num == 3);

  // relation (8) words: same pattern, different forests
  NumberedForest a = forest_of_word(parse_word("v0 h1 h0", Alphabet::pi));
  NumberedForest b = forest_of_word(parse_word("h0 v1 v0 s1", Alphabet::pi));
  CHECK_FALSE(a == b);
  CHECK(pattern_of_forest(a) == pattern_of_forest(b));

  // relation (3) words: identical forests
  CHECK(forest_of_word(parse_word("h2 v1", Alphabet::pi)) ==
        forest_of_word(parse_word("v1 h3", Alphabet::pi)));
}

TEST_CASE("pattern_of_forest commutes with pattern_of_word") {
  CHECK(pattern_of_forest(trivial_forest()) == trivial_pattern());
  NumberedForest single = forest_of_word(parse_word("v0", Alphabet::pi));
  CHECK(pattern_of_forest(single) == pattern_of_word(parse_word("v0", Alphabet::pi)));

  std::mt19937 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = rand_positive_word(rng, 8, 4);
    CHECK(pattern_of_forest(forest_of_word(w)) == pattern_of_word(w));
  }

  // exhaustive at small scale
  const Kind kinds[] = {Kind::v, Kind::h, Kind::sigma};
  for (std::uint64_t code = 0; code < 12 * 12 * 12 * 12; ++code) {
    Word w(Alphabet::pi);
    std::uint64_t c = code;
    for (int i = 0; i < 4; ++i) {
      w.letters.push_back(Generator(kinds[(c % 12) % 3], static_cast<std::uint32_t>((c % 12) / 3)));
      c /= 12;
    }
    if (!(pattern_of_forest(forest_of_word(w)) == pattern_of_word(w))) {
      INFO(print_word(w));
      REQUIRE(false);
    }
  }
}

TEST_CASE("v/h words build standardly numbered forests") {
  std::mt19937 rng(27);
  for (int trial = 0; trial < 150; ++trial) {
    Word w(Alphabet::pi);
    int len = static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i)
      w.letters.push_back(rng() % 2 ? gv(rng() % 5) : gh(rng() % 5));
    CHECK(numbering_of_forest(forest_of_word(w)).empty());
  }
}

TEST_CASE("relation moves that avoid the quad identity preserve the forest") {
  // x_j y_i = y_i x_{j+1} rewrites leave the forest itself unchanged, not
  // just the pattern
  std::mt19937 rng(28);
  for (int trial = 0; trial < 200; ++trial) {
    Word w(Alphabet::pi);
    int len = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i)
      w.letters.push_back(rng() % 2 ? gv(rng() % 4) : gh(rng() % 4));
    NumberedForest f = forest_of_word(w);
    for (std::size_t p = 0; p + 1 < w.letters.size(); ++p) {
      Word moved = w;
      if (rewrite_step_at(moved, p)) CHECK(forest_of_word(moved) == f);
    }
  }
}

TEST_CASE("rewrite_sorted computes the unique irreducible form") {
  CHECK(print_word(rewrite_sorted(parse_word("h2 v1", Alphabet::pi))) == "v1 h3");
  CHECK(print_word(rewrite_sorted(parse_word("v1 v2", Alphabet::pi))) == "v1 v2");
  CHECK(print_word(rewrite_sorted(parse_word("v3 v1 h2", Alphabet::pi))) == "v1 h2 v5");

  std::mt19937 rng(22);
  for (int trial = 0; trial < 120; ++trial) {
    Word w(Alphabet::pi);
    int len = static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i)
      w.letters.push_back(rng() % 2 ? gv(rng() % 5) : gh(rng() % 5));
    Word sorted = rewrite_sorted(w);
    // subscripts nondecreasing
    for (std::size_t p = 0; p + 1 < sorted.letters.size(); ++p)
      CHECK(sorted.letters[p].index <= sorted.letters[p + 1].index);
    // unique regardless of the rewriting strategy
    auto forms = all_normal_forms(w);
    REQUIRE(forms.size() == 1);
    CHECK(*forms.begin() == print_word(sorted));
    // rewriting preserves the forest
    CHECK(forest_of_word(sorted) == forest_of_word(w));
  }
}

TEST_CASE("two v/h words have equal forests iff their sorted forms agree") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    Word w1(Alphabet::pi), w2(Alphabet::pi);
    for (int i = 0; i < 4; ++i) {
      w1.letters.push_back(rng() % 2 ? gv(rng() % 4) : gh(rng() % 4));
      w2.letters.push_back(rng() % 2 ? gv(rng() % 4) : gh(rng() % 4));
    }
    bool same_forest = forest_of_word(w1) == forest_of_word(w2);
    bool same_sorted = rewrite_sorted(w1) == rewrite_sorted(w2);
    CHECK(same_forest == same_sorted);
  }
}

TEST_CASE("secondary labels mark fully divided rectangles") {
  NumberedForest quad = forest_of_word(parse_word("v0 h1 h0", Alphabet::pi));
  auto labels = secondary_labels(quad);
  REQUIRE(labels.size() == 1);
  CHECK(labels.begin()->first == 0);
  CHECK(labels.begin()->second == quad.tree_at(0).root());
  CHECK(is_normalized(quad));

  CHECK(secondary_labels(forest_of_word(parse_word("v0", Alphabet::pi))).empty());

  NumberedForest quad_h = forest_of_word(parse_word("h0 v1 v0", Alphabet::pi));
  auto labels_h = secondary_labels(quad_h);
  REQUIRE(labels_h.size() == 1);
  CHECK_FALSE(is_normalized(quad_h));

  CHECK(is_normalized(trivial_forest()));
}

TEST_CASE("normalized_forest_of_pattern picks the v-rooted representative") {
  NumberedPattern quad = pattern_of_word(parse_word("h0 v1 v0 s1", Alphabet::pi));
  NumberedForest f = normalized_forest_of_pattern(quad);
  CHECK(f == forest_of_word(parse_word("v0 h1 h0", Alphabet::pi)));
  CHECK(is_normalized(f));

  CHECK(normalized_forest_of_pattern(trivial_pattern()) == trivial_forest());

  std::mt19937 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    NumberedPattern p = pattern_of_word(rand_positive_word(rng, 8, 4));
    NumberedForest nf = normalized_forest_of_pattern(p);
    CHECK(is_normalized(nf));
    CHECK(pattern_of_forest(nf) == p);
  }
}

TEST_CASE("canonical_word_pi") {
  CHECK(canonical_word_pi(trivial_pattern()).letters.empty());
  CHECK(print_word(canonical_word_pi(pattern_of_word(parse_word("h2 v1", Alphabet::pi)))) ==
        "v1 h3");

  // both relation-(8) words canonicalize identically, and re-evaluate to the
  // pattern they came from
  NumberedPattern quad = pattern_of_word(parse_word("h0 v1 v0 s1", Alphabet::pi));
  Word canon = canonical_word_pi(quad);
  CHECK(canon == canonical_word_pi(pattern_of_word(parse_word("v0 h1 h0", Alphabet::pi))));
  CHECK(pattern_of_word(canon) == quad);

  std::mt19937 rng(25);
  for (int trial = 0; trial < 300; ++trial) {
    NumberedPattern p = pattern_of_word(rand_positive_word(rng, 9, 4));
    Word w = canonical_word_pi(p);
    CHECK(pattern_of_word(w) == p);
    // normalizing a canonical word returns it unchanged
    CHECK(canonical_word_pi(pattern_of_word(w)) == w);
  }
}

TEST_CASE("canonical words agree exactly when patterns agree") {
  std::mt19937 rng(26);
  std::vector<NumberedPattern> pats;
  std::vector<Word> canons;
  for (int trial = 0; trial < 60; ++trial) {
    NumberedPattern p = pattern_of_word(rand_positive_word(rng, 6, 3));
    pats.push_back(p);
    canons.push_back(canonical_word_pi(p));
  }
  for (std::size_t a = 0; a < pats.size(); ++a)
    for (std::size_t b = a + 1; b < pats.size(); ++b)
      CHECK((pats[a] == pats[b]) == (canons[a] == canons[b]));
}
