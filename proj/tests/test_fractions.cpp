#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "brin2v/fractions.hpp"

using namespace brin2v;

namespace {

NumberedPattern pat(const char* text) { return pattern_of_word(parse_word(text, Alphabet::pi)); }

Word rand_group_word(std::mt19937& rng, int maxlen, std::uint32_t maxidx) {
  Word w(Alphabet::pi);
  int len = static_cast<int>(rng() % static_cast<unsigned>(maxlen + 1));
  for (int i = 0; i < len; ++i) {
    int which = static_cast<int>(rng() % 3);
    std::uint32_t idx = rng() % (maxidx + 1);
    int sign = rng() % 2 ? +1 : -1;
    w.letters.push_back(which == 0 ? gv(idx, sign) : which == 1 ? gh(idx, sign) : gs(idx));
  }
  return w;
}

}  // namespace

TEST_CASE("compose on fraction pairs") {
  NumberedPattern p = pat("v0 h1");
  NumberedPattern q = pat("h0 s1");
  FractionPair pq = compose(pair_of_pi(p), invert(pair_of_pi(q)));
  CHECK(pairs_equal(pq, FractionPair(p, q)));

  std::mt19937 rng(41);
  // f . f^-1 = 1
  for (int trial = 0; trial < 60; ++trial) {
    Word a = rand_group_word(rng, 5, 3);
    FractionPair f = eval_pi_group_word(a);
    CHECK(is_identity(compose(f, invert(f))));
    CHECK(is_identity(compose(invert(f), f)));
  }
  // A_0 as a pair composed with its inverse
  FractionPair a0(pat("v0 v1"), pat("v0 v0"));
  CHECK(is_identity(compose(a0, invert(a0))));
}

TEST_CASE("invert swaps the patterns") {
  FractionPair a0(pat("v0 v1"), pat("v0 v0"));
  CHECK(invert(a0) == FractionPair(pat("v0 v0"), pat("v0 v1")));
  CHECK(invert(invert(a0)) == a0);
  CHECK(is_identity(invert(FractionPair::identity())));
}

TEST_CASE("is_identity") {
  NumberedPattern p = pat("v0 h1 s0");
  CHECK(is_identity(FractionPair(p, p)));
  CHECK_FALSE(is_identity(FractionPair(pat("v0 v1"), pat("v0 v0"))));
  // relation (8) rearranged: eval of one side times the inverse of the other
  FractionPair lhs = eval_pi_group_word(parse_word("v0 h1 h0 s1", Alphabet::pi));
  FractionPair rhs = eval_pi_group_word(parse_word("h0 v1 v0", Alphabet::pi));
  CHECK(is_identity(compose(lhs, invert(rhs))));
}

TEST_CASE("reduce strips common trailing carets") {
  NumberedPattern p = pat("v0 h1");
  NumberedPattern q = pat("h0 s1");
  Word m = parse_word("v1 h0", Alphabet::pi);
  FractionPair padded(apply_word(p, m), apply_word(q, m));
  FractionPair red = reduce(padded);
  CHECK(red == FractionPair(p, q));

  CHECK(reduce(FractionPair(pat("v0 h1"), pat("v0 h1"))) == FractionPair::identity());

  // the two non-unique reduced representatives of one element
  FractionPair r1(pat("h0 v1 s2"), pat("h0 v1"));
  FractionPair r2(pat("v0 h1 s2"), pat("v0 h1"));
  CHECK(reduce(r1) == r1);
  CHECK(reduce(r2) == r2);
  CHECK_FALSE(r1 == r2);
  CHECK(pairs_equal(r1, r2));
}

TEST_CASE("compose is associative; invert is an anti-homomorphism") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    FractionPair f = eval_pi_group_word(rand_group_word(rng, 4, 3));
    FractionPair g = eval_pi_group_word(rand_group_word(rng, 4, 3));
    FractionPair h = eval_pi_group_word(rand_group_word(rng, 4, 3));
    CHECK(pairs_equal(compose(compose(f, g), h), compose(f, compose(g, h))));
    CHECK(pairs_equal(invert(compose(f, g)), compose(invert(g), invert(f))));
  }
}

TEST_CASE("evaluation is a homomorphism on words") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 120; ++trial) {
    Word w1 = rand_group_word(rng, 5, 3);
    Word w2 = rand_group_word(rng, 5, 3);
    CHECK(pairs_equal(compose(eval_pi_group_word(w1), eval_pi_group_word(w2)),
                      eval_pi_group_word(w1 * w2)));
  }
}

TEST_CASE("lmr_form round-trips") {
  // numbering-only difference
  FractionPair f(pat("v0 s0"), pat("v0"));
  LMRForm form = lmr_form(f);
  CHECK(print_word(form.s) == "v0");
  CHECK(print_word(form.u) == "s0");
  CHECK(print_word(form.t) == "v0");
  CHECK(pairs_equal(eval_pi_group_word(form.as_group_word()), f));

  // A_0
  FractionPair a0(pat("v0 v1"), pat("v0 v0"));
  LMRForm fa = lmr_form(a0);
  CHECK(print_word(fa.s) == "v0 v1");
  CHECK(print_word(fa.u) == "1");
  CHECK(print_word(fa.t) == "v0 v0");

  // identity after reduce
  LMRForm fid = lmr_form(reduce(FractionPair(pat("h0"), pat("h0"))));
  CHECK(fid.s == fid.t);
  CHECK(fid.u.letters.empty());

  std::mt19937 rng(44);
  for (int trial = 0; trial < 120; ++trial) {
    FractionPair f2 = eval_pi_group_word(rand_group_word(rng, 6, 3));
    LMRForm l = lmr_form(f2);
    for (const auto& g : l.s.letters) CHECK(g.kind != Kind::sigma);
    for (const auto& g : l.t.letters) CHECK(g.kind != Kind::sigma);
    for (const auto& g : l.u.letters) CHECK(g.kind == Kind::sigma);
    CHECK(pairs_equal(eval_pi_group_word(l.as_group_word()), f2));
  }
}

TEST_CASE("psi translates letterwise and round-trips") {
  CHECK(print_word(psi(5, tv_word({gP(4)}))) == "s0");
  CHECK(print_word(psi(5, tv_word({gp(2)}))) == "s2");
  CHECK(print_word(psi_inv(5, pi_word({gs(0)}))) == "P4");
  CHECK(print_word(psi_inv(5, pi_word({gs(2)}))) == "p2");
  CHECK_THROWS_AS(psi(3, tv_word({gp(2)})), std::invalid_argument);
  CHECK_THROWS_AS(psi(3, tv_word({gP(1)})), std::invalid_argument);
  CHECK_THROWS_AS(psi_inv(3, pi_word({gs(3)})), std::invalid_argument);

  std::mt19937 rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t p = 1 + rng() % 6;
    Word m(Alphabet::two_v);
    int len = static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) {
      if (p >= 2 && rng() % 3) {
        m.letters.push_back(gp(rng() % (p - 1)));
      } else {
        m.letters.push_back(gP(p - 1));
      }
    }
    CHECK(psi_inv(p, psi(p, m)) == m);
  }
}
