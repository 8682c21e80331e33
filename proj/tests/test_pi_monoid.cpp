#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "brin2v/pi_monoid.hpp"

using namespace brin2v;

namespace {

PiElement rand_element(std::mt19937& rng, int maxlen, std::uint32_t maxidx) {
  Word w(Alphabet::pi);
  int len = static_cast<int>(rng() % static_cast<unsigned>(maxlen + 1));
  for (int i = 0; i < len; ++i) {
    int which = static_cast<int>(rng() % 3);
    std::uint32_t idx = rng() % (maxidx + 1);
    w.letters.push_back(which == 0 ? gv(idx) : which == 1 ? gh(idx) : gs(idx));
  }
  return PiElement(w);
}

}  // namespace

TEST_CASE("multiply: identity laws and associativity") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    PiElement p = rand_element(rng, 6, 3);
    CHECK(multiply(p, PiElement::identity()) == p);
    CHECK(multiply(PiElement::identity(), p) == p);
  }
  for (int trial = 0; trial < 200; ++trial) {
    PiElement a = rand_element(rng, 4, 3), b = rand_element(rng, 4, 3),
              c = rand_element(rng, 4, 3);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("multiply agrees with word concatenation") {
  CHECK(multiply(pi_element("v0"), pi_element("h0")).pattern ==
        pattern_of_word(parse_word("v0 h0", Alphabet::pi)));
  CHECK(multiply(pi_element("h0 v1 v0"), pi_element("s1")) == pi_element("v0 h1 h0"));
  std::mt19937 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    Word w1(Alphabet::pi), w2(Alphabet::pi);
    for (int i = 0; i < 4; ++i) {
      auto add = [&](Word& w) {
        int which = static_cast<int>(rng() % 3);
        std::uint32_t idx = rng() % 4;
        w.letters.push_back(which == 0 ? gv(idx) : which == 1 ? gh(idx) : gs(idx));
      };
      add(w1);
      add(w2);
    }
    CHECK(multiply(PiElement(w1), PiElement(w2)).pattern == pattern_of_word(w1 * w2));
  }
}

TEST_CASE("left_divides recovers the unique cofactor") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 150; ++trial) {
    PiElement c = rand_element(rng, 5, 3);
    PiElement k = rand_element(rng, 5, 3);
    PiElement l = multiply(c, k);
    auto got = left_divides(k, l);
    REQUIRE(got.has_value());
    CHECK(*got == c);  // cancellativity makes the cofactor unique
  }
  CHECK(left_divides(pi_element("v0"), pi_element("v0"))->pattern == trivial_pattern());
  CHECK_FALSE(left_divides(pi_element("v0"), pi_element("h0")).has_value());
}

TEST_CASE("left_divides honours its surplus bound") {
  PiElement big = pi_element("v0 v1 v2 v3 v4 v5 v6 v7 v8");
  CHECK_THROWS_AS(left_divides(PiElement::identity(), big, 8), std::invalid_argument);
  CHECK(left_divides(PiElement::identity(), big, 9).has_value());
}

TEST_CASE("left cancellativity at desk scale") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 150; ++trial) {
    PiElement c = rand_element(rng, 4, 3);
    PiElement k1 = rand_element(rng, 4, 3);
    PiElement k2 = rand_element(rng, 4, 3);
    if (multiply(c, k1) == multiply(c, k2)) CHECK(k1 == k2);
  }
}

TEST_CASE("common left multiples of v0 and h0 s1") {
  PiElement y = pi_element("v0");
  PiElement z = pi_element("h0 s1");
  PiElement l1 = multiply(pi_element("h0 v1 s2"), y);
  PiElement l2 = multiply(pi_element("h0 v1"), y);

  // the two displayed identities
  CHECK(l1 == pi_element("h0 v1 v0 s3"));
  CHECK(l1 == multiply(pi_element("v0 h1 s2"), z));
  CHECK(l2 == multiply(pi_element("v0 h1"), z));

  auto clms = common_left_multiples(y, z, 3);
  CHECK(std::count(clms.begin(), clms.end(), l1) == 1);
  CHECK(std::count(clms.begin(), clms.end(), l2) == 1);
  for (const auto& l : clms) {
    CHECK(left_divides(y, l).has_value());
    CHECK(left_divides(z, l).has_value());
  }

  // L1 and L2 are incomparable
  CHECK_FALSE(left_divides(l1, l2).has_value());
  CHECK_FALSE(left_divides(l2, l1).has_value());

  // no common left multiple in the window left-divides both
  for (const auto& l : clms) {
    bool divides_both = left_divides(l, l1).has_value() && left_divides(l, l2).has_value();
    CHECK_FALSE(divides_both);
  }
  CHECK_FALSE(has_least(clms).has_value());
}

TEST_CASE("common left multiples contain the element itself") {
  std::mt19937 rng(35);
  for (int trial = 0; trial < 5; ++trial) {
    PiElement p = rand_element(rng, 2, 1);
    auto clms = common_left_multiples(p, p, p.pattern.surplus() + 1);
    CHECK(std::count(clms.begin(), clms.end(), p) == 1);
  }
}

TEST_CASE("has_least on explicit chains") {
  PiElement p = pi_element("v0 h1");
  auto least = has_least({p});
  REQUIRE(least.has_value());
  CHECK(*least == p);
  PiElement cp = multiply(pi_element("h0"), p);
  auto least2 = has_least({p, cp});
  REQUIRE(least2.has_value());
  CHECK(*least2 == p);
}
