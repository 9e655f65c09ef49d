#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spread/model.hpp"

namespace spread {

struct CoverageCell {
  Rational value;
  Mask disks = 0;  // covering disks, indices into the disk list
};

// Pre-discretized overlapping-zone model: disks are the ground set and
// every overlap region is a weighted cell listing its covering disks. A
// cell's value goes to the players owning allocated covering disks,
// proportionally to owner weight with per-disk multiplicity. Welfare
// depends only on the union of allocated disks, so MeI holds by
// construction. Allocations are disjoint (a disk has one owner).
class CoverageInstance : public WelfareModel {
 public:
  CoverageInstance(std::vector<std::string> disk_names, std::vector<CoverageCell> cells,
                   std::vector<Rational> player_weights, std::string id = "disk_coverage");

  int player_count() const override { return static_cast<int>(weights_.size()); }
  int ground_size() const override { return static_cast<int>(disk_names_.size()); }
  bool disjoint_only() const override { return true; }
  std::string id() const override { return id_; }
  std::string element_name(int e) const override { return disk_names_.at(e); }

  std::vector<Rational> utilities(const AllocationProfile& p) const override;
  Rational welfare(const AllocationProfile& p) const override;

  const std::vector<CoverageCell>& cells() const { return cells_; }
  const std::vector<Rational>& player_weights() const { return weights_; }
  bool unweighted() const;

 private:
  std::vector<std::string> disk_names_;
  std::vector<CoverageCell> cells_;
  std::vector<Rational> weights_;
  std::string id_;
};

Rational coverage_welfare(const CoverageInstance& inst, const AllocationProfile& p);
std::vector<Rational> coverage_utility(const CoverageInstance& inst, const AllocationProfile& p);

// Random cell structure over `disks` disks; each cell gets a small random
// rational value and 1..max_cover covering disks. Equal player weights
// (pass empty `weights`) give an anonymous instance.
std::shared_ptr<CoverageInstance> random_coverage_instance(int players, int disks, int cells,
                                                           int max_cover, std::uint64_t rng_seed,
                                                           std::vector<Rational> weights = {});

}  // namespace spread
