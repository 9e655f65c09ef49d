#include "doctest.h"

#include "spread/checks.hpp"
#include "spread/coverage.hpp"
#include "spread/json_io.hpp"

using namespace spread;

namespace {

std::shared_ptr<CoverageInstance> two_disk_overlap(std::vector<Rational> weights) {
  // one shared cell of value 1/2 plus a private cell per disk
  std::vector<CoverageCell> cells = {
      {rat(1, 2), mask_of({0, 1})},
      {rat(1), mask_of({0})},
      {rat(1), mask_of({1})},
  };
  return std::make_shared<CoverageInstance>(std::vector<std::string>{"D1", "D2"}, cells,
                                            std::move(weights), "two-disk");
}

}  // namespace

TEST_SUITE("disk coverage") {
  TEST_CASE("an overlap cell splits evenly between equal-weight owners") {
    auto inst = two_disk_overlap({Rational(1), Rational(1)});
    AllocationProfile p(2, 2);
    p.sets[0] = mask_of({0});
    p.sets[1] = mask_of({1});
    const auto u = coverage_utility(*inst, p);
    CHECK(u[0] == 1 + rat(1, 4));  // private cell + half of 1/2
    CHECK(u[1] == 1 + rat(1, 4));
    CHECK(coverage_welfare(*inst, p) == rat(5, 2));
  }

  TEST_CASE("owner weights 2:1 split an overlap cell 2/3 : 1/3") {
    auto inst = two_disk_overlap({Rational(2), Rational(1)});
    AllocationProfile p(2, 2);
    p.sets[0] = mask_of({0});
    p.sets[1] = mask_of({1});
    const auto u = coverage_utility(*inst, p);
    CHECK(u[0] == 1 + rat(1, 2) * rat(2, 3));
    CHECK(u[1] == 1 + rat(1, 2) * rat(1, 3));
  }

  TEST_CASE("players without disks earn nothing; empty allocations cover nothing") {
    auto inst = two_disk_overlap({Rational(1), Rational(1)});
    AllocationProfile p(2, 2);
    p.sets[0] = mask_of({0, 1});
    const auto u = inst->utilities(p);
    CHECK(u[1] == 0);
    CHECK(u[0] == coverage_welfare(*inst, p));
    CHECK(coverage_welfare(*inst, AllocationProfile(2, 2)) == 0);
  }

  TEST_CASE("a doubly covered cell counts once toward welfare") {
    auto inst = two_disk_overlap({Rational(1), Rational(1)});
    AllocationProfile p(2, 2);
    p.sets[0] = mask_of({0, 1});
    Rational direct(0);
    for (const auto& cell : inst->cells()) direct += cell.value;
    CHECK(coverage_welfare(*inst, p) == direct);
  }

  TEST_CASE("utilities always sum to welfare") {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
      auto inst = random_coverage_instance(3, 5, 6, 3, seed);
      for_each_disjoint_profile(inst->ground_size(), 3, [&](const AllocationProfile& p) {
        Rational sum(0);
        for (const auto& u : inst->utilities(p)) sum += u;
        CHECK(sum == inst->welfare(p));
      });
    }
  }

  TEST_CASE("structural profile: MeI always, AgI and anonymity only when unweighted") {
    auto unweighted = random_coverage_instance(3, 5, 5, 3, 21);
    CHECK(check_mei(*unweighted).pass);
    CHECK(check_agi(*unweighted).pass);
    CHECK(check_anonymity(*unweighted).pass);
    CHECK(check_adverse_competition(*unweighted).pass);
    CHECK(check_nondecreasing_submodular(*unweighted).pass);

    auto weighted =
        random_coverage_instance(3, 5, 5, 3, 22, {Rational(1), Rational(2), Rational(3)});
    CHECK(check_mei(*weighted).pass);  // welfare is union-only regardless of weights
    const auto agi = check_agi(*weighted);
    CHECK_FALSE(agi.pass);
    REQUIRE(agi.profile_a.has_value());
    CHECK(weighted->utilities(*agi.profile_a)[agi.player] !=
          weighted->utilities(*agi.profile_b)[agi.player]);
    CHECK_FALSE(check_anonymity(*weighted).pass);
  }

  TEST_CASE("coverage instances reject overlapping allocations") {
    auto inst = two_disk_overlap({Rational(1), Rational(1)});
    AllocationProfile p(2, 2);
    p.sets[0] = mask_of({0});
    p.sets[1] = mask_of({0});
    CHECK_THROWS_AS(inst->utilities(p), std::invalid_argument);
  }

  TEST_CASE("instance files round-trip") {
    auto inst = random_coverage_instance(2, 4, 5, 2, 77);
    const auto j = coverage_to_json(*inst);
    const auto back = model_from_json(j);
    for_each_disjoint_profile(4, 2, [&](const AllocationProfile& p) {
      CHECK(back->utilities(p) == inst->utilities(p));
    });
  }

  TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(CoverageInstance({"D1"}, {{rat(1), 0}}, {Rational(1)}),
                    std::invalid_argument);  // empty covering set
    CHECK_THROWS_AS(CoverageInstance({"D1"}, {{rat(1), 1}}, {Rational(0)}),
                    std::invalid_argument);  // non-positive weight
  }
}
