#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spread/model.hpp"

namespace spread {

// Word over player indices prescribing the allocation order; player i must
// appear exactly b_i times.
struct TurnSequence {
  std::vector<int> turns;

  int length() const { return static_cast<int>(turns.size()); }
  BidProfile budgets(int players) const;
};

TurnSequence sequence_from_string(const std::string& word);  // "AAB" -> {0,0,1}
std::string sequence_to_string(const TurnSequence& seq);

struct GreedyStep {
  int player = 0;
  int element = 0;
  Rational gain;  // marginal welfare; may be negative, the turn is never skipped
};

struct GreedyResult {
  AllocationProfile profile;
  std::vector<GreedyStep> steps;
  Rational welfare;
};

// One myopic step: gives `player` the element of maximum marginal welfare
// given the current partial profile, ties to the lowest element id.
// Candidates exclude the player's own elements, and everyone's elements
// when `disjoint` is set.
GreedyStep locally_greedy_step(const WelfareModel& model, AllocationProfile& partial, int player,
                               bool disjoint);

// Order-driven locally greedy allocation. The result depends only on the
// sequence prefix (myopia), which the mechanism table construction relies
// on. `disjoint` is forced on models that only define disjoint profiles.
GreedyResult locally_greedy(const WelfareModel& model, const TurnSequence& seq,
                            bool disjoint = false);

struct UniformGreedyResult {
  std::vector<int> picks;                  // u_1..u_t in pick order
  std::vector<Rational> welfare_by_count;  // w(0..t), evaluated on unions
};

// Greedy on the union welfare (meaningful on MeI models, where welfare is
// union-determined); w(j) is then non-decreasing and concave in j.
UniformGreedyResult uniform_greedy(const WelfareModel& model, int total_budget);

struct OptResult {
  AllocationProfile profile;
  Rational welfare;
};

// Exact optimum over all profiles with |S_i| = b_i, enumerated. Throws
// when the enumeration count exceeds `enumeration_cap`.
OptResult brute_force_opt(const WelfareModel& model, const BidProfile& bids, bool disjoint = false,
                          std::uint64_t enumeration_cap = 4'000'000);

struct DisjointBoundReport {
  bool anonymity_ok = false;
  bool bound_ok = false;  // OPT_disjoint <= (k+1) * greedy welfare, every sequence
  bool stripped_opt_ok = false;    // w(O^0) <= 2 * w(I)
  bool trace_chain_ok = false;    // w(O^0) <= w(I) + sum_i b_i*rho_min_i <= 2 w(I)
  int sequences_checked = 0;
  Rational worst_ratio;  // max over sequences of OPT / greedy welfare
  std::string detail;
};

// Exercises the disjoint locally greedy allocator over every turn sequence
// for `bids` (sampled beyond `max_sequences`), comparing against the exact
// disjoint optimum and re-evaluating the intermediate inequalities from
// the recorded marginal-gain trace. Anonymity is a precondition; a FAIL is
// reported, not ignored.
DisjointBoundReport verify_disjoint_bound(const WelfareModel& model, const BidProfile& bids,
                                          int max_sequences = 2000, std::uint64_t rng_seed = 1);

}  // namespace spread
