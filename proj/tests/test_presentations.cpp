#include <catch2/catch_amalgamated.hpp>

#include "brin2v/presentations.hpp"

using namespace brin2v;

namespace {

bool table_contains(const RelationTable& t, const char* lhs, const char* rhs) {
  for (const auto& pr : t.pairs)
    if (print_word(pr.lhs) == lhs && print_word(pr.rhs) == rhs) return true;
  return false;
}

}  // namespace

TEST_CASE("instantiate_family expands the schemas") {
  RelationTable f5 = instantiate_family(5, 3);
  CHECK(table_contains(f5, "s0 s2", "s2 s0"));
  CHECK(table_contains(f5, "s2 s0", "s0 s2"));

  RelationTable f7 = instantiate_family(7, 3);
  CHECK(table_contains(f7, "s2 v2", "v3 s2 s3"));  // i = j case
  CHECK(table_contains(f7, "s1 v2", "v1 s2 s1"));  // i = j+1 case
  CHECK(table_contains(f7, "s2 v0", "v0 s3"));     // i < j case
  CHECK(table_contains(f7, "s0 v3", "v3 s0"));     // i > j+1 case

  RelationTable f19 = instantiate_family(19, 3);
  CHECK(table_contains(f19, "p0 C2", "C2 p0"));

  CHECK_THROWS_AS(instantiate_family(9, 3), std::invalid_argument);
}

TEST_CASE("relation families hold under evaluation") {
  for (int id : {3, 4, 5, 6, 7, 8}) {
    VerifyReport rep = verify_table(instantiate_family(id, 4));
    INFO("family " << id);
    CHECK(rep.checked > 0);
    CHECK(rep.passed());
  }
  for (int id : {10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26}) {
    VerifyReport rep = verify_table(instantiate_family(id, 3));
    INFO("family " << id);
    CHECK(rep.checked > 0);
    CHECK(rep.passed());
  }
}

TEST_CASE("verify_table flags corrupted pairs") {
  RelationTable bad;
  bad.name = "corrupted";
  bad.model = EvalModel::pi_patterns;
  bad.pairs.push_back(
      {parse_word("s0 v2", Alphabet::pi), parse_word("v3 s0", Alphabet::pi), "control"});
  VerifyReport rep = verify_table(bad);
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].note == "control");
}

TEST_CASE("definitional conjugations hold") {
  CHECK(verify_table(definitional_table_pi(5)).passed());
  CHECK(verify_table(definitional_table(4)).passed());
}

TEST_CASE("finite presentation lists verify with exactly the known corrections") {
  FiniteReport rep = verify_finite_lists();
  CHECK(rep.pi40.checked == 40);
  CHECK(rep.tv30.checked == 30);
  CHECK(rep.pi40.passed());
  CHECK(rep.tv30.passed());
  REQUIRE(rep.corrections.size() == 3);

  const CorrectionRecord& typo = rep.corrections[0];
  CHECK(typo.list == "finite-40");
  CHECK(typo.corrected == "v0 h1 h0 = h0 v1 v0 s1");
  CHECK(typo.corrected_verified);

  const CorrectionRecord& bang = rep.corrections[1];
  CHECK(bang.list == "finite-30");
  CHECK(bang.printed == "P! B0 = B0 P2");
  CHECK(bang.corrected == "P1 B0 = B0 P2");
  CHECK(bang.corrected_verified);

  const CorrectionRecord& clash = rep.corrections[2];
  CHECK(clash.list == "finite-30");
  CHECK(clash.printed == "C1 A1 = A1 C4");
  CHECK(clash.printed_fails);  // semantic evaluation exposes the misprint
  CHECK(clash.corrected == "C3 A1 = A1 C4");
  CHECK(clash.source == "family 16 at q=3, m=1");
  CHECK(clash.corrected_verified);
}

TEST_CASE("an entry of the 40 list verifies as printed") {
  Word lhs = expand_finite_pi(parse_word("s1 h1", Alphabet::pi));
  Word rhs = expand_finite_pi(parse_word("h2 s1 s2", Alphabet::pi));
  CHECK(pairs_equal(eval_pi_group_word(lhs), eval_pi_group_word(rhs)));
}

TEST_CASE("derivation chains and canonical shapes") {
  DerivationReport rep = verify_derivations(3);
  for (const auto& f : rep.identities.failures)
    UNSCOPED_INFO(f.note << ": " << f.lhs << " = " << f.rhs << " (" << f.detail << ")");
  CHECK(rep.identities.passed());
  for (const auto& f : rep.shapes.failures)
    UNSCOPED_INFO(f.note << ": " << f.lhs << " (" << f.detail << ")");
  CHECK(rep.shapes.passed());
  CHECK(rep.identities.checked > 50);
  CHECK(rep.shapes.checked > 100);
}

TEST_CASE("rewriting: termination measure and local confluence") {
  RewritingReport rep = check_rewriting(4, 3);
  for (const auto& f : rep.failures) UNSCOPED_INFO(f);
  CHECK(rep.passed());
  CHECK(rep.words == 8 + 64 + 512 + 4096);
  // sorted words admit no step
  CHECK(print_word(rewrite_sorted(parse_word("h3 v2 v1", Alphabet::pi))) == "v1 v3 h5");
}

TEST_CASE("pattern relations transfer along v->A, h->B, sigma->pi") {
  VerifyReport rep = verify_homomorphism_transfer(3);
  for (const auto& f : rep.failures)
    UNSCOPED_INFO(f.note << ": " << f.lhs << " = " << f.rhs << " (" << f.detail << ")");
  CHECK(rep.passed());
}
