// Command line front end: parse, evaluate, normalize and compare words; run
// the verification harness; print the common-left-multiple report; render
// patterns as SVG.
//
// Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "brin2v/brin2v.hpp"

namespace {

using namespace brin2v;

Alphabet alphabet_of_group(const std::string& group) {
  return group == "pi" ? Alphabet::pi : group == "2vhat" ? Alphabet::pi : Alphabet::two_v;
}

std::uint32_t default_bound() {
  if (const char* env = std::getenv("BRIN2V_BOUND")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 64) return static_cast<std::uint32_t>(v);
  }
  return 6;
}

int run_eval(const std::string& group, const std::string& text) {
  Alphabet alph = alphabet_of_group(group);
  Word w = parse_word(text, alph);
  if (group == "pi") {
    if (!w.monoid_positive())
      throw std::invalid_argument("the pi monoid takes positive words; use --group 2vhat");
    std::cout << pattern_to_json(pattern_of_word(w)).dump(2) << "\n";
  } else {
    FractionPair f = eval_word(w);
    if (group == "2v" && !in_two_v(f))
      throw std::invalid_argument("the word leaves the subgroup supported on square 0");
    std::cout << fraction_to_json(f).dump(2) << "\n";
  }
  return 0;
}

int run_normalize(const std::string& group, const std::string& text) {
  Alphabet alph = alphabet_of_group(group);
  Word w = parse_word(text, alph);
  if (group == "pi") {
    if (!w.monoid_positive())
      throw std::invalid_argument("the pi monoid takes positive words; use --group 2vhat");
    std::cout << print_word(canonical_word_pi(pattern_of_word(w))) << "\n";
  } else if (group == "2vhat") {
    LMRForm form = lmr_form(eval_word(w));
    std::cout << print_word(form.as_group_word()) << "\n";
  } else {
    std::cout << print_word(canonical_word_2v(eval_word(w)).as_word()) << "\n";
  }
  return 0;
}

int run_equal(const std::string& group, const std::string& t1, const std::string& t2) {
  Alphabet alph = alphabet_of_group(group);
  Word w1 = parse_word(t1, alph), w2 = parse_word(t2, alph);
  bool eq;
  if (group == "pi") {
    if (!w1.monoid_positive() || !w2.monoid_positive())
      throw std::invalid_argument("the pi monoid takes positive words; use --group 2vhat");
    eq = pattern_of_word(w1) == pattern_of_word(w2);
  } else {
    eq = pairs_equal(eval_word(w1), eval_word(w2));
  }
  std::cout << (eq ? "true" : "false") << "\n";
  return 0;
}

json report_json(const VerifyReport& rep) {
  json fails = json::array();
  for (const auto& f : rep.failures)
    fails.push_back(
        {{"note", f.note}, {"lhs", f.lhs}, {"rhs", f.rhs}, {"detail", f.detail}});
  return {{"table", rep.table},
          {"checked", rep.checked},
          {"passed", rep.passed()},
          {"failures", fails}};
}

json report_json(const SuiteResult& res) {
  return {{"table", res.name},
          {"checked", res.checked},
          {"passed", res.passed()},
          {"failures", res.failures}};
}

void print_report(const VerifyReport& rep, bool as_json, json& out) {
  if (as_json) {
    out.push_back(report_json(rep));
    return;
  }
  std::cout << rep.table << ": " << rep.checked << " pairs, "
            << (rep.passed() ? "ok" : "FAILED") << "\n";
  for (const auto& f : rep.failures)
    std::cout << "  " << f.note << ": " << f.lhs << " = " << f.rhs << "  [" << f.detail << "]\n";
}

void print_report(const SuiteResult& res, bool as_json, json& out) {
  if (as_json) {
    out.push_back(report_json(res));
    return;
  }
  std::cout << res.name << ": " << res.checked << " checks, "
            << (res.passed() ? "ok" : "FAILED") << "\n";
  for (const auto& f : res.failures) std::cout << "  " << f << "\n";
}

int run_verify(const std::string& family, std::uint32_t bound, std::uint64_t seed,
               bool as_json) {
  json out = json::array();
  bool ok = true;
  auto table = [&](const VerifyReport& rep) {
    ok = ok && rep.passed();
    print_report(rep, as_json, out);
  };
  auto suite = [&](const SuiteResult& res) {
    ok = ok && res.passed();
    print_report(res, as_json, out);
  };

  auto run_one = [&](const std::string& fam) {
    if (fam == "pi") {
      for (int id : {3, 4, 5, 6, 7, 8}) table(verify_table(instantiate_family(id, bound)));
    } else if (fam == "2v") {
      for (int id = 10; id <= 26; ++id) table(verify_table(instantiate_family(id, bound)));
    } else if (fam == "finite-40" || fam == "finite-30") {
      FiniteReport rep = verify_finite_lists();
      table(fam == "finite-40" ? rep.pi40 : rep.tv30);
      json corr = json::array();
      for (const auto& c : rep.corrections) {
        if (c.list != fam) continue;
        ok = ok && c.corrected_verified;
        if (as_json)
          corr.push_back({{"entry", c.entry},
                          {"printed", c.printed},
                          {"issue", c.issue},
                          {"printed_fails", c.printed_fails},
                          {"corrected", c.corrected},
                          {"source", c.source},
                          {"corrected_verified", c.corrected_verified}});
        else
          std::cout << "  corrected entry " << c.entry << ": " << c.printed << "  ["
                    << c.issue << "] -> " << c.corrected << " via " << c.source << " ("
                    << (c.corrected_verified ? "verified" : "FAILED") << ")\n";
      }
      if (as_json && !corr.empty()) out.back()["corrections"] = corr;
    } else if (fam == "definitional") {
      table(verify_table(definitional_table_pi(bound)));
      table(verify_table(definitional_table(bound)));
    } else if (fam == "derivations") {
      DerivationReport rep = verify_derivations(bound);
      table(rep.identities);
      table(rep.shapes);
    } else if (fam == "rewriting") {
      RewritingReport rep = check_rewriting(5, 4);
      SuiteResult res;
      res.name = "rewriting";
      res.checked = rep.steps + rep.joins;
      res.failures = rep.failures;
      suite(res);
    } else if (fam == "homomorphism") {
      table(verify_homomorphism_transfer(bound));
    } else if (fam == "normal-form-pi") {
      suite(suite_normal_form_pi(seed, 200, 12, bound));
    } else if (fam == "forest-uniqueness") {
      suite(suite_forest_uniqueness(seed, 200, 10, bound));
    } else if (fam == "tree-codec") {
      suite(suite_tree_codec(2, 3, 1, 3));
    } else if (fam == "word-problem-2v") {
      suite(suite_word_problem_2v(seed, 120, 60, 8, 4));
    } else if (fam == "psi") {
      suite(suite_psi(bound, seed, 200));
    } else {
      int id = std::stoi(fam);
      table(verify_table(instantiate_family(id, bound)));
    }
  };

  if (family == "all") {
    for (const char* fam :
         {"pi", "2v", "definitional", "finite-40", "finite-30", "derivations", "rewriting",
          "homomorphism", "normal-form-pi", "forest-uniqueness", "word-problem-2v", "psi"})
      run_one(fam);
  } else {
    run_one(family);
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int run_lclm(std::uint64_t bound, bool as_json) {
  LclmReport rep = suite_lclm(bound);
  if (as_json) {
    json j = {{"surplus_bound", rep.surplus_bound},
              {"window",
               {{"max_square", rep.window.max_square}, {"cofactor_surplus", rep.window.surplus}}},
              {"common_left_multiples", rep.multiples},
              {"multiples", rep.multiple_words},
              {"displayed_multiples_found", rep.l1_found && rep.l2_found},
              {"displayed_multiples_incomparable", rep.incomparable},
              {"least_exists", rep.least_exists},
              {"checked", rep.result.checked},
              {"passed", rep.result.passed()},
              {"failures", rep.result.failures}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "common left multiples of v0 and h0 s1, surplus bound " << rep.surplus_bound
              << "\n";
    std::cout << "  search window: squares 0.." << rep.window.max_square
              << ", cofactor surplus <= " << rep.window.surplus
              << ", compact numberings only\n";
    std::cout << "  multiples found: " << rep.multiples << "\n";
    std::cout << "  (h0 v1 s2) v0 = h0 v1 v0 s3 = (v0 h1 s2)(h0 s1): "
              << (rep.l1_found ? "found" : "MISSING") << "\n";
    std::cout << "  (h0 v1) v0 = (v0 h1)(h0 s1): " << (rep.l2_found ? "found" : "MISSING")
              << "\n";
    std::cout << "  the two displayed multiples are "
              << (rep.incomparable ? "incomparable" : "COMPARABLE") << "\n";
    std::cout << "  least common left multiple within the window: "
              << (rep.least_exists ? "EXISTS" : "none") << "\n";
    for (const auto& f : rep.result.failures) std::cout << "  FAILED: " << f << "\n";
    std::cout << (rep.result.passed() ? "ok" : "FAILED") << "\n";
  }
  return rep.result.passed() ? 0 : 1;
}

int run_render(const std::string& group, const std::string& text, std::uint64_t squares) {
  if (group != "pi") throw std::invalid_argument("render takes --group pi");
  Word w = parse_word(text, Alphabet::pi);
  if (!w.monoid_positive()) throw std::invalid_argument("render takes a positive word");
  std::cout << render_pattern(pattern_of_word(w), squares);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations in the pattern monoid and the groups over it"};
  app.require_subcommand(1);

  std::string group = "pi";
  std::string word1, word2, family = "all";
  std::uint32_t bound = default_bound();
  std::uint64_t seed = 0, squares = 3, lclm_bound = 4;
  bool as_json = false;

  auto add_group = [&](CLI::App* cmd) {
    cmd->add_option("--group", group, "pi, 2vhat or 2v")
        ->check(CLI::IsMember({"pi", "2vhat", "2v"}));
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a word to its pattern or pair");
  add_group(eval);
  eval->add_option("word", word1, "generator word")->required();

  CLI::App* normalize = app.add_subcommand("normalize", "print the canonical word");
  add_group(normalize);
  normalize->add_option("word", word1, "generator word")->required();

  CLI::App* equal = app.add_subcommand("equal", "decide equality of two words");
  add_group(equal);
  equal->add_option("word1", word1)->required();
  equal->add_option("word2", word2)->required();

  CLI::App* verify = app.add_subcommand("verify", "run the relation verification harness");
  verify->add_option("--family", family,
                     "3..8, 10..26, pi, 2v, finite-40, finite-30, definitional, derivations, "
                     "rewriting, homomorphism, normal-form-pi, forest-uniqueness, tree-codec, "
                     "word-problem-2v, psi, or all");
  verify->add_option("--bound", bound, "index bound (default 6, or BRIN2V_BOUND)");
  verify->add_option("--seed", seed, "seed for the randomized suites");
  verify->add_flag("--json", as_json, "machine-readable report");

  CLI::App* lclm = app.add_subcommand("lclm", "bounded common-left-multiple report");
  lclm->add_option("--bound", lclm_bound, "surplus bound (default 4)");
  lclm->add_flag("--json", as_json, "machine-readable report");

  CLI::App* render = app.add_subcommand("render", "render a pattern as SVG");
  add_group(render);
  render->add_option("word", word1, "positive word")->required();
  render->add_option("--squares", squares, "how many squares to draw (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(group, word1);
    if (normalize->parsed()) return run_normalize(group, word1);
    if (equal->parsed()) return run_equal(group, word1, word2);
    if (verify->parsed()) return run_verify(family, bound, seed, as_json);
    if (lclm->parsed()) return run_lclm(lclm_bound, as_json);
    if (render->parsed()) return run_render(group, word1, squares);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
