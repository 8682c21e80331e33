#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "brin2v/forest.hpp"
#include "brin2v/pattern.hpp"

using namespace brin2v;

namespace {

const DyadicInterval whole(0, 0);
const DyadicInterval lo(0, 1);
const DyadicInterval hi(1, 1);

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

}  // namespace

TEST_CASE("trivial pattern") {
  NumberedPattern e = trivial_pattern();
  CHECK(e.squares().empty());
  CHECK(e.tail_offset() == 0);
  auto [sq, rect] = e.locate(5);
  CHECK(sq == 5);
  CHECK(rect.is_unit());
  CHECK(e == pattern_of_word(Word(Alphabet::pi)));
  CHECK(apply_generator(apply_generator(e, gs(0)), gs(0)) == e);
}

TEST_CASE("v0 splits the first square") {
  NumberedPattern p = apply_generator(trivial_pattern(), gv(0));
  CHECK(p.tail_offset() == 1);
  auto tiles = p.square_tiles(0);
  REQUIRE(tiles.size() == 2);
  CHECK(tiles[0].rect == DyadicRect(lo, whole));
  CHECK(tiles[0].num == 0);
  CHECK(tiles[1].rect == DyadicRect(hi, whole));
  CHECK(tiles[1].num == 1);
  CHECK(p.locate(2) == std::pair<std::uint64_t, DyadicRect>{1, DyadicRect::unit()});
}

TEST_CASE("sigma0 swaps the numbers of the first two squares") {
  NumberedPattern p = apply_generator(trivial_pattern(), gs(0));
  CHECK(p.tail_offset() == 0);
  CHECK(p.square_tiles(0)[0].num == 1);
  CHECK(p.square_tiles(1)[0].num == 0);
  CHECK(p.locate(7).first == 7);
}

TEST_CASE("v0 then h1 (checked against the forest route)") {
  NumberedPattern p = pattern_of_word(parse_word("v0 h1", Alphabet::pi));
  auto tiles = p.square_tiles(0);
  REQUIRE(tiles.size() == 3);
  // left half 0, bottom-right 1, top-right 2
  CHECK(tiles[0] == NumberedRect{DyadicRect(lo, whole), 0});
  CHECK(tiles[1] == NumberedRect{DyadicRect(hi, lo), 1});
  CHECK(tiles[2] == NumberedRect{DyadicRect(hi, hi), 2});
  // independent route: word -> forest -> pattern
  CHECK(pattern_of_forest(forest_of_word(parse_word("v0 h1", Alphabet::pi))) == p);
}

TEST_CASE("defining relations act on patterns") {
  CHECK(pattern_of_word(parse_word("v0 h1 h0", Alphabet::pi)) ==
        pattern_of_word(parse_word("h0 v1 v0 s1", Alphabet::pi)));
  CHECK(pattern_of_word(parse_word("h2 v1", Alphabet::pi)) ==
        pattern_of_word(parse_word("v1 h3", Alphabet::pi)));
  CHECK_FALSE(pattern_of_word(parse_word("v0", Alphabet::pi)) ==
              pattern_of_word(parse_word("h0", Alphabet::pi)));
}

TEST_CASE("sigma actions are involutions") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    NumberedPattern p = pattern_of_word(rand_positive_word(rng, 8, 4));
    std::uint32_t i = rng() % 6;
    CHECK(apply_generator(apply_generator(p, gs(i)), gs(i)) == p);
  }
}

TEST_CASE("surplus equals the v/h length of any generating word") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    Word w = rand_positive_word(rng, 10, 5);
    std::uint64_t vh = 0;
    for (const auto& g : w.letters)
      if (g.kind != Kind::sigma) ++vh;
    CHECK(pattern_of_word(w).surplus() == vh);
  }
}

TEST_CASE("superpose computes the coarsest common refinement") {
  NumberedPattern pv = pattern_of_word(parse_word("v0", Alphabet::pi));
  NumberedPattern ph = pattern_of_word(parse_word("h0", Alphabet::pi));

  Refinement quartered = superpose(pv, ph);
  REQUIRE(quartered.count(0) == 1);
  CHECK(quartered[0] == std::vector<DyadicRect>{
                            DyadicRect(lo, lo), DyadicRect(hi, lo),
                            DyadicRect(lo, hi), DyadicRect(hi, hi)});

  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    NumberedPattern p = pattern_of_word(rand_positive_word(rng, 8, 3));
    CHECK(superpose(p, p) == tiling_of(p));
    CHECK(superpose(trivial_pattern(), p) == tiling_of(p));
    CHECK(superpose(p, trivial_pattern()) == tiling_of(p));
  }
}

TEST_CASE("factor is a section: P . factor(P,R) = R") {
  NumberedPattern p = pattern_of_word(parse_word("v0", Alphabet::pi));
  NumberedPattern r = pattern_of_word(parse_word("v0 h1 h0", Alphabet::pi));
  CHECK(factor(p, p).letters.empty());
  CHECK(factor(trivial_pattern(), p) == parse_word("v0", Alphabet::pi));
  Word m = factor(p, r);
  CHECK(apply_word(p, m) == r);

  std::mt19937 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    Word base = rand_positive_word(rng, 6, 3);
    Word ext = rand_positive_word(rng, 6, 4);
    NumberedPattern P = pattern_of_word(base);
    NumberedPattern R = apply_word(P, ext);
    Word w = factor(P, R);
    CHECK(apply_word(P, w) == R);
  }
}

TEST_CASE("factor rejects non-refinements") {
  NumberedPattern pv = pattern_of_word(parse_word("v0", Alphabet::pi));
  NumberedPattern ph = pattern_of_word(parse_word("h0", Alphabet::pi));
  CHECK_THROWS_AS(factor(pv, ph), std::invalid_argument);
}

TEST_CASE("unapply_generator inverts apply_generator") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    NumberedPattern p = pattern_of_word(rand_positive_word(rng, 8, 4));
    int which = static_cast<int>(rng() % 3);
    std::uint32_t idx = rng() % 6;
    Generator g = which == 0 ? gv(idx) : which == 1 ? gh(idx) : gs(idx);
    auto back = unapply_generator(apply_generator(p, g), g);
    REQUIRE(back.has_value());
    CHECK(*back == p);
  }
  // not every pattern is in the image of a split
  CHECK_FALSE(unapply_generator(trivial_pattern(), gv(0)).has_value());
  CHECK_FALSE(unapply_generator(pattern_of_word(parse_word("v0", Alphabet::pi)), gh(0)).has_value());
}

TEST_CASE("relation families (3)-(8) hold on patterns at small indices") {
  // spot checks here; the presentations module instantiates the full tables
  for (std::uint32_t i = 0; i <= 3; ++i) {
    for (std::uint32_t j = i + 1; j <= 4; ++j) {
      CHECK(pattern_of_word(pi_word({gv(j), gh(i)})) == pattern_of_word(pi_word({gh(i), gv(j + 1)})));
    }
    CHECK(pattern_of_word(pi_word({gs(i), gs(i)})) == trivial_pattern());
    CHECK(pattern_of_word(pi_word({gv(i), gh(i + 1), gh(i)})) ==
          pattern_of_word(pi_word({gh(i), gv(i + 1), gv(i), gs(i + 1)})));
  }
}
