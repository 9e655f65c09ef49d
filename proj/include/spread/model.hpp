#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spread/rational.hpp"

namespace spread {

// Element sets are bitmasks over ground-set indices (ground size <= 64).
using Mask = std::uint64_t;

inline bool mask_has(Mask m, int e) { return (m >> e) & Mask{1}; }
inline Mask mask_add(Mask m, int e) { return m | (Mask{1} << e); }
inline Mask mask_drop(Mask m, int e) { return m & ~(Mask{1} << e); }
inline int mask_size(Mask m) { return __builtin_popcountll(m); }
std::vector<int> mask_elements(Mask m);
Mask mask_of(const std::vector<int>& elements);

// Ordered list of per-player element sets over a common ground set.
struct AllocationProfile {
  std::vector<Mask> sets;
  int ground = 0;

  AllocationProfile() = default;
  AllocationProfile(int players, int ground_size) : sets(players, 0), ground(ground_size) {}

  int players() const { return static_cast<int>(sets.size()); }
  Mask union_mask() const;
  bool pairwise_disjoint() const;
  int total_allocated() const;

  bool operator==(const AllocationProfile& o) const {
    return ground == o.ground && sets == o.sets;
  }
  bool operator<(const AllocationProfile& o) const { return sets < o.sets; }
};

struct BidProfile {
  std::vector<int> budgets;

  BidProfile() = default;
  explicit BidProfile(std::vector<int> b) : budgets(std::move(b)) {}

  int players() const { return static_cast<int>(budgets.size()); }
  int total() const;
  bool operator==(const BidProfile& o) const { return budgets == o.budgets; }
};

// Oracle for the total welfare f and the per-player utilities f_i of an
// allocation profile. Implementations must be safe to share across
// concurrent readers once constructed.
class WelfareModel {
 public:
  virtual ~WelfareModel() = default;

  virtual int player_count() const = 0;
  virtual int ground_size() const = 0;

  // Exact oracles answer in rationals; sampling-backed oracles answer in
  // rounded estimates and must be rejected by the structural checkers.
  virtual bool exact() const { return true; }

  // Some models only define utilities for pairwise-disjoint profiles
  // (tabular counterexamples, disk coverage).
  virtual bool disjoint_only() const { return false; }

  virtual std::string id() const { return "model"; }
  virtual std::string element_name(int e) const { return std::to_string(e); }
  int element_index(const std::string& name) const;  // -1 when unknown

  virtual std::vector<Rational> utilities(const AllocationProfile& p) const = 0;
  virtual Rational welfare(const AllocationProfile& p) const;
  Rational utility(int player, const AllocationProfile& p) const;

 protected:
  // Throws std::invalid_argument when p is outside the model's domain.
  void require_valid(const AllocationProfile& p) const;
};

// Finite map from canonical profiles to exact per-player utility vectors.
// Fixture carrier for the hand-built counterexample models.
class TabularModel : public WelfareModel {
 public:
  TabularModel(int players, std::vector<std::string> element_names, bool disjoint_domain = true,
               std::string id = "tabular");

  int player_count() const override { return players_; }
  int ground_size() const override { return static_cast<int>(names_.size()); }
  bool disjoint_only() const override { return disjoint_domain_; }
  std::string id() const override { return id_; }
  std::string element_name(int e) const override { return names_.at(e); }

  void set_entry(const std::vector<Mask>& sets, std::vector<Rational> utils);
  bool has_entry(const std::vector<Mask>& sets) const;
  // Throws std::invalid_argument listing a missing profile unless every
  // profile of the declared domain has an entry.
  void require_complete() const;

  std::vector<Rational> utilities(const AllocationProfile& p) const override;

  const std::map<std::vector<Mask>, std::vector<Rational>>& entries() const { return entries_; }

 private:
  int players_;
  std::vector<std::string> names_;
  bool disjoint_domain_;
  std::string id_;
  std::map<std::vector<Mask>, std::vector<Rational>> entries_;
};

// Calls fn for every profile of `players` pairwise-disjoint sets over
// `ground` elements ((players+1)^ground profiles).
void for_each_disjoint_profile(int ground, int players,
                               const std::function<void(const AllocationProfile&)>& fn);

// All size-`size` submasks of `pool`, ascending.
std::vector<Mask> submasks_of_size(Mask pool, int size);

}  // namespace spread
