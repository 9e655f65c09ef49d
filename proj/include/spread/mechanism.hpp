#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spread/greedy.hpp"
#include "spread/model.hpp"

namespace spread {

struct WeightedPoint {
  Rational x;
  Rational y;
  Rational weight;
};

// Replaces a convex combination of <=6 points in the plane by an
// equivalent combination supported on at most 3 of them, solving the
// barycentric systems exactly. Search order: singletons, pairs, then the
// C(6,3) triples; the first feasible candidate wins. Returns (input index,
// new weight) pairs; the weighted mean is preserved bit-exactly.
std::vector<std::pair<int, Rational>> caratheodory_prune(const std::vector<WeightedPoint>& points);

struct SequenceEntry {
  TurnSequence seq;
  Rational prob;
  AllocationProfile alloc;  // cached greedy allocation for seq
  Rational ua;
  Rational ub;
};

struct TableEntry {
  std::vector<SequenceEntry> entries;  // support, <= 3 after pruning
  Rational wa;                         // expected utility of player A
  Rational wb;
  Rational alpha;  // mixing weight toward the (a-1,b)+A side; 1 on base rows
};

struct TableCheckReport {
  bool ok = true;
  int entries_checked = 0;
  std::vector<std::string> violations;
};

// Recursive distribution table over turn sequences for two players.
// Entry (a,b) mixes the (a-1,b) distribution extended by an A-turn with
// the (a,b-1) distribution extended by a B-turn, choosing the mixing
// weight so that both players' expected utilities stay monotone in their
// own bids, then prunes the support back to three sequences.
class TwoPlayerTable {
 public:
  // Builds every entry with a+b <= t_max. Requires an exact model with two
  // players, t_max <= ground size, and adverse competition; a violated
  // endpoint claim or an empty feasible mixing interval aborts with
  // std::logic_error carrying the (a,b) state.
  static TwoPlayerTable construct(const WelfareModel& model, int t_max, bool disjoint = false);

  const TableEntry& at(int a, int b) const;
  int t_max() const { return t_max_; }
  bool disjoint() const { return disjoint_; }

  // Re-checks, as exact rational inequalities: cached utilities against
  // the oracle, probability normalization, support size, and the three
  // monotonicity conditions at every entry.
  TableCheckReport check_invariants(const WelfareModel& model) const;

 private:
  int t_max_ = 0;
  bool disjoint_ = false;
  std::vector<std::vector<TableEntry>> m_;  // m_[a][b], a+b <= t_max
};

// Scalar probability table for welfare functions that depend only on the
// union of allocated elements (MeI). The greedy element order u_1..u_t is
// fixed once; P[a,b] is the probability that u_{a+b} goes to player A, and
// the remaining elements are assigned recursively in reverse order.
class ScalarTable {
 public:
  // verify_mei runs the MeI checker first (fixture-scale guard).
  static ScalarTable construct(const WelfareModel& model, int t_max, bool verify_mei = true);

  Rational p(int a, int b) const;
  Rational wa(int a, int b) const;
  Rational wb(int a, int b) const;
  Rational w(int t) const { return welfare_by_count_.at(t); }
  Rational delta(int t) const;
  int t_max() const { return t_max_; }
  const std::vector<int>& element_order() const { return order_; }

  // Full outcome distribution of the reverse-order assignment process for
  // budgets (a,b); partitions the first a+b greedy elements.
  const std::vector<std::pair<AllocationProfile, Rational>>& distribution(int a, int b) const;

  TableCheckReport check_invariants() const;

 private:
  int t_max_ = 0;
  std::vector<int> order_;
  std::vector<Rational> welfare_by_count_;
  std::vector<std::vector<Rational>> p_, wa_, wb_;
  std::vector<std::vector<std::vector<std::pair<AllocationProfile, Rational>>>> dist_;
};

struct RunResult {
  AllocationProfile profile;
  std::vector<Rational> utilities;
  Rational welfare;
  TurnSequence sequence;
  std::vector<Rational> trace;  // per-step marginal gains, when greedy-driven
  std::map<std::string, std::string> notes;
};

// Samples a sequence from the constructed table entry (exact rational
// thresholds against a 64-bit uniform draw; residual bias below 2^-64,
// irrelevant to the exact expectation paths, which never sample) and
// returns its cached greedy allocation.
RunResult run_two_player(const WelfareModel& model, int a, int b, std::uint64_t rng_seed,
                         bool disjoint = false);
RunResult run_two_player(const TwoPlayerTable& table, const WelfareModel& model, int a, int b,
                         std::uint64_t rng_seed);

// Uniform random greedy: greedy element selection on the union welfare,
// then a uniformly random budget-respecting assignment of the picks.
// Strategyproof for k >= 3 under MeI+AgI; the k=2 output carries a
// warning note.
RunResult run_uniform_random(const WelfareModel& model, const BidProfile& bids,
                             std::uint64_t rng_seed);

enum class MechanismId {
  kTwoPlayerTable,
  kTwoPlayerDisjoint,
  kUniformRandom,
  kDictatorship,
  kRoundRobin,
  kLargestRemaining,
  kSmallestRemaining,
};

MechanismId mechanism_from_string(const std::string& name);
std::string mechanism_name(MechanismId id);

// Deterministic turn sequence of the named ordering policy, ties toward
// the lowest player index.
TurnSequence ordering_for_policy(MechanismId policy, const BidProfile& bids);

// Exact expected utility vector of a mechanism at a bid profile: the
// cached table expectation for the table mechanisms, full enumeration
// over assignments for the uniform mechanism (guarded by `enum_cap`), and
// the single greedy outcome for the deterministic orderings.
std::vector<Rational> expected_utilities(MechanismId mech, const WelfareModel& model,
                                         const BidProfile& bids, std::uint64_t enum_cap = 250000);

// Closed form b_i/t * w(t), valid when MeI and AgI hold with k >= 3.
std::vector<Rational> uniform_closed_form_utilities(const WelfareModel& model,
                                                    const BidProfile& bids);

}  // namespace spread
