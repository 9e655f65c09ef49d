#pragma once

#include <optional>
#include <string>

#include "spread/model.hpp"

namespace spread {

// Verdict of a structural model check. On FAIL the witness fields hold a
// concrete configuration that re-evaluates to a violation; `detail` is the
// human-readable rendering of the same data.
struct CheckResult {
  std::string check;
  bool pass = true;
  std::string detail;

  int player = -1;
  int other_player = -1;
  int element = -1;
  std::optional<AllocationProfile> profile_a;
  std::optional<AllocationProfile> profile_b;
};

// All checkers enumerate pairwise-disjoint profiles only, reject non-exact
// models, and refuse ground sets larger than `max_ground` (they are
// desk-scale verifiers; every check is exponential in general).

// f non-decreasing per coordinate, diminishing marginal returns of f per
// coordinate, and each f_i non-decreasing in the player's own set.
CheckResult check_nondecreasing_submodular(const WelfareModel& model, int max_ground = 10,
                                           int max_k = 4);

// f_i non-increasing in every opponent's set.
CheckResult check_adverse_competition(const WelfareModel& model, int max_ground = 10);

// Welfare depends only on the union of the allocated sets.
CheckResult check_mei(const WelfareModel& model, int max_ground = 10);

// Each f_i depends on the opponents' sets only through their union.
// Vacuous (always PASS) for two players.
CheckResult check_agi(const WelfareModel& model, int max_ground = 10);

// Utilities symmetric under simultaneous permutation of players and sets.
CheckResult check_anonymity(const WelfareModel& model, int max_ground = 10);

struct IndifferenceImplication {
  CheckResult mei;
  CheckResult agi;
  CheckResult anonymity;
  bool implication_holds = true;  // mei && agi => anonymity
};

// For k >= 3 players, MeI and AgI together must imply anonymity. Requires
// the normalization f_i = 0 on an empty own set; fixtures violating it are
// rejected with std::invalid_argument.
IndifferenceImplication check_mei_agi_implies_anonymity(const WelfareModel& model,
                                                          int max_ground = 10);

}  // namespace spread
