#pragma once

// Seeded randomized and exhaustive verification suites shared by the
// acceptance runner and the command line front end.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <thread>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brin2v/pi_monoid.hpp"
#include "brin2v/presentations.hpp"
#include "brin2v/two_v.hpp"

namespace brin2v {

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

namespace detail {

inline Word random_positive_pi_word(std::mt19937_64& rng, std::size_t maxlen,
                                    std::uint32_t maxidx) {
  Word w(Alphabet::pi);
  std::size_t len = rng() % (maxlen + 1);
  for (std::size_t i = 0; i < len; ++i) {
    std::uint32_t idx = static_cast<std::uint32_t>(rng() % (maxidx + 1));
    switch (rng() % 3) {
      case 0: w.letters.push_back(gv(idx)); break;
      case 1: w.letters.push_back(gh(idx)); break;
      default: w.letters.push_back(gs(idx)); break;
    }
  }
  return w;
}

inline Word random_two_v_word(std::mt19937_64& rng, std::size_t maxlen, std::uint32_t maxidx) {
  Word w(Alphabet::two_v);
  std::size_t len = rng() % (maxlen + 1);
  for (std::size_t i = 0; i < len; ++i) {
    std::uint32_t idx = static_cast<std::uint32_t>(rng() % (maxidx + 1));
    switch (rng() % 5) {
      case 0: w.letters.push_back(gA(idx, rng() % 2 ? +1 : -1)); break;
      case 1: w.letters.push_back(gB(idx, rng() % 2 ? +1 : -1)); break;
      case 2: w.letters.push_back(gC(idx, rng() % 2 ? +1 : -1)); break;
      case 3: w.letters.push_back(gp(idx)); break;
      default: w.letters.push_back(gP(idx)); break;
    }
  }
  return w;
}

// one random defining-relation move on a positive word, pattern preserved
inline Word random_relation_move(const Word& w, std::mt19937_64& rng, std::uint32_t maxidx) {
  struct Move {
    std::size_t at;
    int kind;  // 0: sort fwd, 1: sort bwd, 2: sigma^2 insert, 3: sigma^2 delete,
               // 4: quad fwd, 5: quad bwd
  };
  std::vector<Move> moves;
  auto is_vh = [](const Generator& g) { return g.kind == Kind::v || g.kind == Kind::h; };
  for (std::size_t p = 0; p + 1 < w.letters.size(); ++p) {
    const Generator &a = w.letters[p], &b = w.letters[p + 1];
    if (is_vh(a) && is_vh(b) && b.index < a.index) moves.push_back({p, 0});
    if (is_vh(a) && is_vh(b) && b.index >= a.index + 2) moves.push_back({p, 1});
    if (a.kind == Kind::sigma && b.kind == Kind::sigma && a.index == b.index)
      moves.push_back({p, 3});
  }
  for (std::size_t p = 0; p <= w.letters.size(); ++p) moves.push_back({p, 2});
  for (std::size_t p = 0; p + 2 < w.letters.size(); ++p) {
    const Generator &a = w.letters[p], &b = w.letters[p + 1], &c = w.letters[p + 2];
    if (a.kind == Kind::v && b.kind == Kind::h && c.kind == Kind::h && b.index == a.index + 1 &&
        c.index == a.index)
      moves.push_back({p, 4});
    if (p + 3 < w.letters.size()) {
      const Generator& d = w.letters[p + 3];
      if (a.kind == Kind::h && b.kind == Kind::v && c.kind == Kind::v && d.kind == Kind::sigma &&
          b.index == a.index + 1 && c.index == a.index && d.index == a.index + 1)
        moves.push_back({p, 5});
    }
  }
  Move m = moves[rng() % moves.size()];
  Word out = w;
  auto& ls = out.letters;
  switch (m.kind) {
    case 0: {
      Generator a = ls[m.at], b = ls[m.at + 1];
      ls[m.at] = b;
      ls[m.at + 1] = Generator(a.kind, a.index + 1);
      break;
    }
    case 1: {
      Generator a = ls[m.at], b = ls[m.at + 1];
      ls[m.at] = Generator(b.kind, b.index - 1);
      ls[m.at + 1] = a;
      break;
    }
    case 2: {
      std::uint32_t k = static_cast<std::uint32_t>(rng() % (maxidx + 1));
      ls.insert(ls.begin() + static_cast<long>(m.at), {gs(k), gs(k)});
      break;
    }
    case 3:
      ls.erase(ls.begin() + static_cast<long>(m.at), ls.begin() + static_cast<long>(m.at) + 2);
      break;
    case 4: {
      std::uint32_t i = ls[m.at].index;
      std::vector<Generator> repl = {gh(i), gv(i + 1), gv(i), gs(i + 1)};
      ls.erase(ls.begin() + static_cast<long>(m.at), ls.begin() + static_cast<long>(m.at) + 3);
      ls.insert(ls.begin() + static_cast<long>(m.at), repl.begin(), repl.end());
      break;
    }
    case 5: {
      std::uint32_t i = ls[m.at].index;
      std::vector<Generator> repl = {gv(i), gh(i + 1), gh(i)};
      ls.erase(ls.begin() + static_cast<long>(m.at), ls.begin() + static_cast<long>(m.at) + 4);
      ls.insert(ls.begin() + static_cast<long>(m.at), repl.begin(), repl.end());
      break;
    }
  }
  return out;
}

}  // namespace detail

// canonical words decide equality in the pattern monoid, and re-evaluate
inline SuiteResult suite_normal_form_pi(std::uint64_t seed, std::size_t words,
                                        std::size_t maxlen, std::uint32_t maxidx) {
  SuiteResult res;
  res.name = "normal-form-pi";
  std::mt19937_64 rng(seed);
  std::vector<NumberedPattern> pats;
  std::vector<Word> canons;
  for (std::size_t i = 0; i < words; ++i) {
    Word w = detail::random_positive_pi_word(rng, maxlen, maxidx);
    NumberedPattern p = pattern_of_word(w);
    Word c = canonical_word_pi(p);
    ++res.checked;
    if (!(pattern_of_word(c) == p))
      res.failures.push_back("canonical word fails to re-evaluate: " + print_word(w));
    pats.push_back(std::move(p));
    canons.push_back(std::move(c));
  }
  for (std::size_t a = 0; a < pats.size(); ++a)
    for (std::size_t b = a + 1; b < pats.size(); ++b) {
      ++res.checked;
      if ((pats[a] == pats[b]) != (canons[a] == canons[b])) {
        res.failures.push_back("agreement mismatch between words " + std::to_string(a) +
                               " and " + std::to_string(b));
      }
    }
  return res;
}

// the normalized forest of a pattern is normalized, unique across generating
// words, and round-trips
inline SuiteResult suite_forest_uniqueness(std::uint64_t seed, std::size_t patterns,
                                           std::size_t maxlen, std::uint32_t maxidx) {
  SuiteResult res;
  res.name = "forest-uniqueness";
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < patterns; ++i) {
    Word w = detail::random_positive_pi_word(rng, maxlen, maxidx);
    NumberedPattern p = pattern_of_word(w);
    NumberedForest nf = normalized_forest_of_pattern(p);
    ++res.checked;
    if (!is_normalized(nf)) {
      res.failures.push_back("forest not normalized for " + print_word(w));
      continue;
    }
    if (!(pattern_of_forest(nf) == p)) {
      res.failures.push_back("forest fails to round-trip for " + print_word(w));
      continue;
    }
    // walk the word through defining relations; the pattern, and hence the
    // normalized forest, must be stable
    Word v = w;
    for (int moves = 0; moves < 6; ++moves) v = detail::random_relation_move(v, rng, maxidx);
    if (!(pattern_of_word(v) == p)) {
      res.failures.push_back("relation walk changed the pattern of " + print_word(w));
      continue;
    }
    if (!(normalized_forest_of_pattern(pattern_of_word(v)) == nf)) {
      res.failures.push_back("normalized forest not unique for " + print_word(w));
      continue;
    }
    // the canonical word's own forest is the normalized forest
    if (!(forest_of_word(canonical_word_pi(p)) == nf)) {
      res.failures.push_back("canonical word builds a different forest for " + print_word(w));
      continue;
    }
    // a word whose forest happens to be normalized must already agree
    NumberedForest direct = forest_of_word(v);
    if (is_normalized(direct) && !(direct == nf))
      res.failures.push_back("normalized generating word disagrees for " + print_word(v));
  }
  return res;
}

namespace detail {

// Builder state carried incrementally through the exhaustive codec scan.
// Appending a letter touches only the tail of the range pattern: moving an
// appended v_0 left across the sigma suffix raises each crossed subscript by
// one, so the pattern of t v_0^j s' equals the old range pattern with v_0^j
// and the new swap applied.
struct CodecLevel {
  Word word = Word(Alphabet::two_v);
  FractionPair eval;               // the genuine fold of compose over the letters
  Word t = Word(Alphabet::pi);     // v/h letters, |t| = k
  std::uint64_t k = 0;
  Word sigmas = Word(Alphabet::pi);
  NumberedPattern range;           // pattern of t followed by sigmas

  FractionPair builder_pair(const std::vector<NumberedPattern>& v0cache) const {
    return FractionPair(range, v0cache[k]);
  }

  CodecLevel extend(const Generator& g, const std::vector<NumberedPattern>& v0cache) const {
    CodecLevel next = *this;
    next.word.letters.push_back(g);
    next.eval = compose(eval, generator_pair(g));
    switch (g.kind) {
      case Kind::C: {
        std::uint64_t d = g.index - next.k;
        for (std::uint64_t q = 0; q < d; ++q) next.t.letters.push_back(gv(0));
        next.t.letters.push_back(gh(0));
        for (std::uint64_t q = 0; q < d; ++q) next.range = apply_generator(next.range, gv(0));
        next.range = apply_generator(next.range, gh(0));
        next.k = g.index + 1;
        break;
      }
      case Kind::A:
      case Kind::B: {
        Kind x = g.kind == Kind::A ? Kind::v : Kind::h;
        std::uint64_t n = next.k;
        if (n <= g.index + 1) {
          for (std::uint64_t q = 0; q < g.index + 1 - n; ++q) {
            next.t.letters.push_back(gv(0));
            next.range = apply_generator(next.range, gv(0));
          }
          next.t.letters.push_back(Generator(x, 1));
          next.range = apply_generator(next.range, Generator(x, 1));
          next.k = g.index + 2;
        } else {
          next.t.letters.push_back(Generator(x, static_cast<std::uint32_t>(n - g.index)));
          next.range = apply_generator(next.range, Generator(x, static_cast<std::uint32_t>(n - g.index)));
          next.k = n + 1;
        }
        break;
      }
      case Kind::pi: {
        std::uint64_t n = next.k;
        if (n >= g.index + 2) {
          std::uint32_t s = static_cast<std::uint32_t>((n - 1) - g.index);
          next.sigmas.letters.push_back(gs(s));
          next.range = apply_generator(next.range, gs(s));
        } else {
          std::uint64_t j = g.index + 2 - n;
          for (auto& s : next.sigmas.letters) s.index += static_cast<std::uint32_t>(j);
          for (std::uint64_t q = 0; q < j; ++q) {
            next.t.letters.push_back(gv(0));
            next.range = apply_generator(next.range, gv(0));
          }
          next.k = n + j;
          next.sigmas.letters.push_back(gs(1));
          next.range = apply_generator(next.range, gs(1));
        }
        break;
      }
      default: break;
    }
    (void)v0cache;
    return next;
  }
};

inline void codec_scan(const std::vector<std::uint32_t>& cs, std::uint32_t max_ab,
                       std::uint32_t max_pi, std::uint32_t maxidx,
                       const std::vector<NumberedPattern>& v0cache, SuiteResult& res) {
  CodecLevel base;
  for (auto c : cs) base = base.extend(gC(c), v0cache);

  auto check_level = [&](const CodecLevel& lvl, bool check_formula) {
    ++res.checked;
    if (!pairs_equal(lvl.builder_pair(v0cache), lvl.eval)) {
      res.failures.push_back("builder disagrees with evaluation on " + print_word(lvl.word));
      return;
    }
    if (check_formula && !lvl.word.letters.empty()) {
      // the primary tree ignores the pi letters, so it is checked per A/B node
      NumberedForest f = forest_of_word(lvl.t);
      TrunkTree primary = strip_to_primary(decompose_trunk(f.tree_at(0)));
      std::vector<std::uint32_t> xs;
      for (const auto& g : lvl.word.letters)
        if (g.kind == Kind::A || g.kind == Kind::B) xs.push_back(g.index);
      if (primary.trunk_length() != trunk_length_formula(cs, xs))
        res.failures.push_back("trunk formula mismatch on " + print_word(lvl.word));
      LBuild direct = tree_from_L(lvl.word);
      if (direct.t != lvl.t || direct.k != lvl.k || direct.sigmas != lvl.sigmas)
        res.failures.push_back("incremental builder differs from tree_from_L on " +
                               print_word(lvl.word));
    }
  };

  std::vector<CodecLevel> stack{base};
  while (!stack.empty()) {
    CodecLevel cur = std::move(stack.back());
    stack.pop_back();

    check_level(cur, true);
    std::vector<CodecLevel> pis{cur};
    for (std::uint32_t depth = 1; depth <= max_pi; ++depth) {
      std::vector<CodecLevel> nextl;
      for (const auto& lvl : pis)
        for (std::uint32_t i = 0; i <= maxidx; ++i) {
          CodecLevel ext = lvl.extend(gp(i), v0cache);
          check_level(ext, false);
          if (depth < max_pi) nextl.push_back(std::move(ext));
        }
      pis = std::move(nextl);
    }

    std::size_t ab_len = 0;
    for (const auto& g : cur.word.letters)
      if (g.kind == Kind::A || g.kind == Kind::B) ++ab_len;
    if (ab_len < max_ab)
      for (std::uint32_t i = 0; i <= maxidx; ++i)
        for (Kind k : {Kind::A, Kind::B})
          stack.push_back(cur.extend(Generator(k, i), v0cache));
  }
}

}  // namespace detail

// exhaustive codec check: builder pair = semantic evaluation, trunk length
// matches the max formula; independent C prefixes fan out over threads and
// merge in prefix order
inline SuiteResult suite_tree_codec(std::uint32_t max_c, std::uint32_t max_ab,
                                    std::uint32_t max_pi, std::uint32_t maxidx,
                                    unsigned threads = 0) {
  SuiteResult res;
  res.name = "tree-codec";
  std::vector<std::vector<std::uint32_t>> c_prefixes;
  {
    std::vector<std::uint32_t> cur;
    auto rec = [&](auto&& self, std::uint32_t next) -> void {
      c_prefixes.push_back(cur);
      if (cur.size() == max_c) return;
      for (std::uint32_t i = next; i <= maxidx; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  std::vector<NumberedPattern> v0cache;
  for (std::uint32_t k = 0; k <= 2 * (maxidx + 2) + max_ab + max_pi * (maxidx + 2) + 4; ++k)
    v0cache.push_back(v0_power_pattern(k));

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  std::vector<SuiteResult> parts(c_prefixes.size());
  std::atomic<std::size_t> next_task{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next_task.fetch_add(1);
      if (i >= c_prefixes.size()) return;
      detail::codec_scan(c_prefixes[i], max_ab, max_pi, maxidx, v0cache, parts[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& part : parts) {
    res.checked += part.checked;
    res.failures.insert(res.failures.end(), part.failures.begin(), part.failures.end());
  }
  return res;
}

// canonical words for group elements: round-trip and decide equality
inline SuiteResult suite_word_problem_2v(std::uint64_t seed, std::size_t words,
                                         std::size_t pairs, std::size_t maxlen,
                                         std::uint32_t maxidx) {
  SuiteResult res;
  res.name = "word-problem-2v";
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < words; ++i) {
    Word w = detail::random_two_v_word(rng, maxlen, maxidx);
    ++res.checked;
    Word probe = w * canonical_word_2v(eval_word(w)).as_word().inverse();
    if (!word_problem_2v(probe))
      res.failures.push_back("w * canonical(w)^-1 is not trivial for " + print_word(w));
  }
  std::size_t planted = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    Word w1 = detail::random_two_v_word(rng, maxlen, maxidx);
    Word w2 = detail::random_two_v_word(rng, maxlen, maxidx);
    if (i % 4 == 0) {
      w2 = w1;
      static const char* trivia[] = {"C0 A0 p1 C2^-1 B0^-1", "p0 p0", "P1 A1 P2^-1 p1^-1",
                                     "A1 B0 A2^-1 B0^-1"};
      Word rel = parse_word(trivia[rng() % 4], Alphabet::two_v);
      w2.letters.insert(w2.letters.begin() + static_cast<long>(rng() % (w2.letters.size() + 1)),
                        rel.letters.begin(), rel.letters.end());
      ++planted;
    }
    ++res.checked;
    bool sem = pairs_equal(eval_word(w1), eval_word(w2));
    bool canon = canonical_word_2v(eval_word(w1)) == canonical_word_2v(eval_word(w2));
    if (sem != canon)
      res.failures.push_back("canonical/semantic equality mismatch: " + print_word(w1) +
                             " vs " + print_word(w2));
  }
  if (planted == 0 && pairs > 0) res.failures.push_back("no equal pairs were exercised");
  return res;
}

// pi_i = v0^p s_{(p-1)-i} v0^-p and pibar_{p-1} = v0^p s_0 v0^-p, plus the
// letterwise translation round-trip
inline SuiteResult suite_psi(std::uint32_t max_p, std::uint64_t seed, std::size_t words) {
  SuiteResult res;
  res.name = "psi";
  for (std::uint32_t p = 1; p <= max_p; ++p) {
    Word conj_prefix = v0_power_word(p);
    for (std::uint32_t k = 0; k <= p - 1; ++k) {
      Word rhs = conj_prefix;
      rhs.letters.push_back(gs(k));
      Word inv = v0_power_word(p).inverse();
      rhs.letters.insert(rhs.letters.end(), inv.letters.begin(), inv.letters.end());
      Generator lhs = k == 0 ? gP(p - 1) : gp((p - 1) - k);
      ++res.checked;
      if (!pairs_equal(generator_pair(lhs), eval_pi_group_word(rhs)))
        res.failures.push_back("conjugation identity fails at p=" + std::to_string(p) +
                               ", k=" + std::to_string(k));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < words; ++i) {
    std::uint32_t p = 1 + static_cast<std::uint32_t>(rng() % max_p);
    Word m(Alphabet::two_v);
    std::size_t len = rng() % 8;
    for (std::size_t j = 0; j < len; ++j) {
      if (p >= 2 && rng() % 3)
        m.letters.push_back(gp(static_cast<std::uint32_t>(rng() % (p - 1))));
      else
        m.letters.push_back(gP(p - 1));
    }
    ++res.checked;
    if (!(psi_inv(p, psi(p, m)) == m))
      res.failures.push_back("translation round-trip fails at p=" + std::to_string(p));
  }
  return res;
}

// the bounded common-left-multiple landscape of v0 and h0 s1
struct LclmReport {
  SuiteResult result;
  std::uint64_t surplus_bound = 0;
  ClmWindow window;
  std::size_t multiples = 0;
  std::vector<std::string> multiple_words;  // canonical words, sorted
  bool l1_found = false, l2_found = false;
  bool incomparable = false;
  bool least_exists = false;
};

inline LclmReport suite_lclm(std::uint64_t surplus_bound) {
  LclmReport rep;
  rep.result.name = "lclm";
  rep.surplus_bound = surplus_bound;
  PiElement y = pi_element("v0");
  PiElement z = pi_element("h0 s1");
  PiElement l1 = multiply(pi_element("h0 v1 s2"), y);
  PiElement l2 = multiply(pi_element("h0 v1"), y);
  auto check = [&](bool ok, const std::string& what) {
    ++rep.result.checked;
    if (!ok) rep.result.failures.push_back(what);
  };
  check(l1 == pi_element("h0 v1 v0 s3"), "(h0 v1 s2) v0 = h0 v1 v0 s3");
  check(l1 == multiply(pi_element("v0 h1 s2"), z), "(h0 v1 s2) v0 = (v0 h1 s2)(h0 s1)");
  check(l2 == multiply(pi_element("v0 h1"), z), "(h0 v1) v0 = (v0 h1)(h0 s1)");

  rep.window.max_square = 2;
  rep.window.surplus = surplus_bound > 1 ? surplus_bound - 1 : 0;
  auto clms = common_left_multiples(y, z, surplus_bound, rep.window);
  rep.multiples = clms.size();
  for (const auto& l : clms)
    rep.multiple_words.push_back(print_word(canonical_word_pi(l.pattern)));
  rep.l1_found = std::count(clms.begin(), clms.end(), l1) == 1;
  rep.l2_found = std::count(clms.begin(), clms.end(), l2) == 1;
  check(rep.l1_found, "first displayed multiple found by the search");
  check(rep.l2_found, "second displayed multiple found by the search");
  rep.incomparable = !left_divides(l1, l2, surplus_bound).has_value() &&
                     !left_divides(l2, l1, surplus_bound).has_value();
  check(rep.incomparable, "the two displayed multiples are incomparable");
  for (const auto& l : clms) {
    ++rep.result.checked;
    if (left_divides(l, l1, surplus_bound).has_value() &&
        left_divides(l, l2, surplus_bound).has_value())
      rep.result.failures.push_back("a common left multiple divides both: " +
                                    print_word(canonical_word_pi(l.pattern)));
  }
  auto least = has_least(clms, surplus_bound);
  rep.least_exists = least.has_value();
  check(!rep.least_exists, "no least common left multiple in the window");
  return rep;
}

}  // namespace brin2v
