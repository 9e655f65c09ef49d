#include "spread/coverage.hpp"

#include <random>

namespace spread {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CoverageInstance::CoverageInstance(std::vector<std::string> disk_names,
                                   std::vector<CoverageCell> cells,
                                   std::vector<Rational> player_weights, std::string id)
    : disk_names_(std::move(disk_names)),
      cells_(std::move(cells)),
      weights_(std::move(player_weights)),
      id_(std::move(id)) {
  if (weights_.empty()) throw std::invalid_argument("coverage instance needs player weights");
  for (const auto& w : weights_)
    if (w <= 0) throw std::invalid_argument("player weights must be positive");
  if (disk_names_.size() > 64) throw std::invalid_argument("more than 64 disks");
  const Mask legal =
      disk_names_.size() >= 64 ? ~Mask{0} : (Mask{1} << disk_names_.size()) - 1;
  for (const auto& c : cells_) {
    if (c.disks == 0) throw std::invalid_argument("cell with an empty covering set");
    if (c.disks & ~legal) throw std::invalid_argument("cell references an unknown disk");
    if (c.value < 0) throw std::invalid_argument("negative cell value");
  }
}

std::vector<Rational> CoverageInstance::utilities(const AllocationProfile& p) const {
  require_valid(p);
  const int k = player_count();
  std::vector<Rational> utils(k, Rational(0));
  for (const auto& cell : cells_) {
    // owner weight per allocated covering disk, with multiplicity
    Rational total(0);
    for (int i = 0; i < k; ++i) {
      const int owned = mask_size(cell.disks & p.sets[i]);
      if (owned) total += weights_[i] * owned;
    }
    if (total == 0) continue;
    for (int i = 0; i < k; ++i) {
      const int owned = mask_size(cell.disks & p.sets[i]);
      if (owned) utils[i] += cell.value * weights_[i] * owned / total;
    }
  }
  return utils;
}

Rational CoverageInstance::welfare(const AllocationProfile& p) const {
  require_valid(p);
  const Mask allocated = p.union_mask();
  Rational total(0);
  for (const auto& cell : cells_)
    if (cell.disks & allocated) total += cell.value;
  return total;
}

bool CoverageInstance::unweighted() const {
  for (const auto& w : weights_)
    if (w != weights_[0]) return false;
  return true;
}

Rational coverage_welfare(const CoverageInstance& inst, const AllocationProfile& p) {
  return inst.welfare(p);
}

std::vector<Rational> coverage_utility(const CoverageInstance& inst, const AllocationProfile& p) {
  return inst.utilities(p);
}

std::shared_ptr<CoverageInstance> random_coverage_instance(int players, int disks, int cells,
                                                           int max_cover, std::uint64_t rng_seed,
                                                           std::vector<Rational> weights) {
  if (max_cover < 1 || max_cover > disks) throw std::invalid_argument("bad max_cover");
  std::mt19937_64 rng(splitmix64(rng_seed));
  if (weights.empty()) weights.assign(players, Rational(1));
  std::vector<std::string> names;
  for (int d = 0; d < disks; ++d) names.push_back("D" + std::to_string(d + 1));
  std::vector<CoverageCell> cs;
  // one private cell per disk keeps every greedy marginal strictly useful
  for (int d = 0; d < disks; ++d)
    cs.push_back({rat(1 + static_cast<long>(rng() % 8), 4), mask_add(0, d)});
  for (int c = 0; c < cells; ++c) {
    const int cover = 1 + static_cast<int>(rng() % max_cover);
    Mask m = 0;
    while (mask_size(m) < cover) m = mask_add(m, static_cast<int>(rng() % disks));
    cs.push_back({rat(1 + static_cast<long>(rng() % 12), 3), m});
  }
  return std::make_shared<CoverageInstance>(names, cs, weights,
                                            "random-coverage-" + std::to_string(rng_seed));
}

}  // namespace spread
