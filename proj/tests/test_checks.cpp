#include "doctest.h"

#include "fixtures.hpp"
#include "spread/checks.hpp"
#include "spread/coverage.hpp"
#include "spread/or_model.hpp"

using namespace spread;
using namespace spread::testing;

namespace {

// every FAIL must carry profiles that re-evaluate to the violation
void require_witness_reevaluates(const WelfareModel& m, const CheckResult& r) {
  REQUIRE_FALSE(r.pass);
  REQUIRE(r.profile_a.has_value());
  REQUIRE(r.profile_b.has_value());
  CHECK_NOTHROW(m.utilities(*r.profile_a));
  CHECK_NOTHROW(m.utilities(*r.profile_b));
}

}  // namespace

TEST_SUITE("rational plumbing") {
  TEST_CASE("parsing, canonical form and serialization") {
    CHECK(rat_parse("4/8") == rat(1, 2));
    CHECK(rat_str(rat_parse("4/8")) == "1/2");
    CHECK(rat_str(rat(3)) == "3");
    CHECK(rat_str(rat(-3, 6)) == "-1/2");
    CHECK(rat_parse("-2/-4") == rat(1, 2));
    CHECK_THROWS_AS(rat_parse("one half"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
    // results of arithmetic stay in lowest terms with positive denominator
    const Rational q = rat(2, 6) + rat(1, 6);
    CHECK(q.get_den() == 2);
    CHECK(q.get_num() == 1);
  }
}

TEST_SUITE("structural checks") {
  TEST_CASE("additive model is nondecreasing submodular with adverse competition") {
    auto m = additive_model(2, {rat(3), rat(2), rat(1)});
    CHECK(check_nondecreasing_submodular(*m).pass);
    CHECK(check_adverse_competition(*m).pass);
    CHECK(check_agi(*m).pass);  // vacuous at k=2
  }

  TEST_CASE("superadditive pair fails diminishing returns with a witness") {
    auto m = superadditive_model();
    const auto r = check_nondecreasing_submodular(*m);
    require_witness_reevaluates(*m, r);
    // the witness marginals actually violate the inequality
    AllocationProfile small = *r.profile_b;
    AllocationProfile large = *r.profile_a;
    AllocationProfile small_e = small, large_e = large;
    small_e.sets[r.player] = mask_add(small_e.sets[r.player], r.element);
    large_e.sets[r.player] = mask_add(large_e.sets[r.player], r.element);
    CHECK(m->welfare(large_e) - m->welfare(large) > m->welfare(small_e) - m->welfare(small));
  }

  TEST_CASE("anonymity-without-MeI model: submodular sum, MeI fails, anonymity holds") {
    auto m = anonymity_without_mei_model();
    CHECK(check_nondecreasing_submodular(*m).pass);
    CHECK(check_adverse_competition(*m).pass);
    CHECK(check_anonymity(*m).pass);
    const auto mei = check_mei(*m);
    require_witness_reevaluates(*m, mei);
    CHECK(m->welfare(*mei.profile_a) != m->welfare(*mei.profile_b));
    CHECK(mei.profile_a->union_mask() == mei.profile_b->union_mask());
  }

  TEST_CASE("MeI-without-anonymity model: MeI holds, anonymity fails on a singleton pair") {
    auto m = mei_without_anonymity_model();
    CHECK(check_mei(*m).pass);
    CHECK(check_adverse_competition(*m).pass);
    CHECK(check_nondecreasing_submodular(*m).pass);
    const auto anon = check_anonymity(*m);
    require_witness_reevaluates(*m, anon);
  }

  TEST_CASE("the two-item competition fixture fails adverse competition") {
    auto m = load_fixture("adverse-competition", rat(1, 100), rat(100));
    const auto r = check_adverse_competition(*m);
    require_witness_reevaluates(*m, r);
    CHECK(r.player != r.other_player);
    // the named opponent's gain strictly raises the witness player's payoff
    CHECK(m->utilities(*r.profile_b)[r.player] > m->utilities(*r.profile_a)[r.player]);
    CHECK(check_nondecreasing_submodular(*m).pass);
  }

  TEST_CASE("bundled spread fixtures pass every structural assumption") {
    for (const char* name : {"counter1", "counter2", "counter3"}) {
      auto m = load_fixture(name);
      CAPTURE(name);
      CHECK(check_nondecreasing_submodular(*m).pass);
      CHECK(check_adverse_competition(*m).pass);
      CHECK(check_mei(*m).pass);
      CHECK(check_anonymity(*m).pass);
    }
  }

  TEST_CASE("three-player anonymous model fails both MeI and AgI") {
    auto m = anonymous_three_player_model();
    CHECK(check_nondecreasing_submodular(*m).pass);
    CHECK(check_adverse_competition(*m).pass);
    CHECK(check_anonymity(*m).pass);
    const auto mei = check_mei(*m);
    require_witness_reevaluates(*m, mei);
    const auto agi = check_agi(*m);
    require_witness_reevaluates(*m, agi);

    const auto thm = check_mei_agi_implies_anonymity(*m);
    CHECK_FALSE(thm.mei.pass);
    CHECK_FALSE(thm.agi.pass);
    CHECK(thm.anonymity.pass);
    CHECK(thm.implication_holds);  // vacuously
  }

  TEST_CASE("three-player additive model satisfies the full implication") {
    auto m = additive_model(3, {rat(2), rat(1), rat(1)});
    const auto thm = check_mei_agi_implies_anonymity(*m);
    CHECK(thm.mei.pass);
    CHECK(thm.agi.pass);
    CHECK(thm.anonymity.pass);
    CHECK(thm.implication_holds);
  }

  TEST_CASE("randomized proportional-split fixtures satisfy MeI, AgI and anonymity") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      auto m = random_split_fixture(3, 4, seed);
      CAPTURE(seed);
      const auto thm = check_mei_agi_implies_anonymity(*m);
      CHECK(thm.mei.pass);
      CHECK(thm.agi.pass);
      CHECK(thm.anonymity.pass);
      CHECK(check_nondecreasing_submodular(*m).pass);
      CHECK(check_adverse_competition(*m).pass);
    }
  }

  TEST_CASE("normalization violations are rejected by the implication check only") {
    auto m = load_fixture("adverse-competition", rat(1, 100), rat(3));
    // k = 2 is rejected outright
    CHECK_THROWS_AS(check_mei_agi_implies_anonymity(*m), std::invalid_argument);
    // non-normalized k=3 fixture: utilities positive with an empty own set
    auto bad = std::make_shared<TabularModel>(3, std::vector<std::string>{"a"}, true, "bad-norm");
    for_each_disjoint_profile(1, 3, [&](const AllocationProfile& p) {
      bad->set_entry(p.sets, {rat(1), rat(1), rat(1)});
    });
    CHECK_THROWS_AS(check_mei_agi_implies_anonymity(*bad), std::invalid_argument);
    CHECK_NOTHROW(check_mei(*bad));
  }

  TEST_CASE("checkers reject sampling-backed models") {
    auto base = load_or_fixture("counter1");
    SampledOrModel sampled(base, 64, 7);
    CHECK_FALSE(sampled.exact());
    CHECK_THROWS_AS(check_mei(sampled), std::invalid_argument);
    CHECK_THROWS_AS(check_nondecreasing_submodular(sampled), std::invalid_argument);
  }

  TEST_CASE("checkers refuse ground sets beyond the enumeration cap") {
    auto m = random_or_instance(2, 6, 3, 11);
    CHECK_THROWS_AS(check_mei(*m, /*max_ground=*/4), std::invalid_argument);
  }

  TEST_CASE("utilities sum to welfare on every fixture profile") {
    for (const char* name : {"counter1", "counter2", "counter3"}) {
      auto m = load_fixture(name);
      for_each_disjoint_profile(m->ground_size(), m->player_count(),
                                [&](const AllocationProfile& p) {
                                  Rational sum(0);
                                  for (const auto& u : m->utilities(p)) sum += u;
                                  CHECK(sum == m->welfare(p));
                                });
    }
  }
}
